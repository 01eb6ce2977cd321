#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "navbench/core_world.hpp"

namespace navbench {

using Vector = std::vector<double>;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// y = W x; throws DimensionMismatch.
Vector matvec(const Matrix& w, const Vector& x, const std::string& stage);
Vector concat(const std::vector<Vector>& parts);

// Per-pose feature sets standing in for pretrained encoders.
struct FeatureSet {
  std::vector<Vector> visual;       // spatial visual features
  std::vector<Vector> depth;        // spatial depth features
  std::vector<Vector> instruction;  // per-token encodings
};

Vector mean_pool(const std::vector<Vector>& vectors);

// Numerically-stable softmax (max subtraction).
Vector softmax(const Vector& logits);

struct AttnParams {
  Matrix w_key;  // query_dim x input_dim
};

struct AttnResult {
  Vector output;   // sum_i alpha_i x_i, in the inputs' space
  Vector weights;  // alpha, a probability simplex point
};

// Scaled dot-product attention: alpha_i = softmax_i((W_K x_i)^T q / sqrt(d_q)).
AttnResult attn(const std::vector<Vector>& inputs, const Vector& query, const AttnParams& params);

struct ActionHeadResult {
  Vector logits;
  Vector probs;
  Action action;  // argmax, ties resolved by enum order
};

ActionHeadResult action_head(const Vector& h, const Matrix& w_action, const Vector& b_action);

// Conventional gated recurrent cell. Gate layout in the packed weights is
// [reset | update | candidate]:
//   r = sigmoid(W_r x + U_r h + b_r)
//   z = sigmoid(W_z x + U_z h + b_z)
//   n = tanh(W_n x + r * (U_n h) + b_n)
//   h' = (1 - z) * n + z * h
struct GruCell {
  Matrix w_input;   // 3h x input_dim
  Matrix w_hidden;  // 3h x h
  Vector bias;      // 3h
  std::size_t hidden = 0;

  Vector step(const Vector& x, const Vector& h, const std::string& stage) const;
};

// Standard LSTM cell; gate layout [input | forget | candidate | output].
struct LstmCell {
  Matrix w_input;   // 4h x input_dim
  Matrix w_hidden;  // 4h x h
  Vector bias;      // 4h
  std::size_t hidden = 0;

  struct State {
    Vector h;
    Vector c;
  };
  State step(const Vector& x, const State& s, const std::string& stage) const;
  State initial() const { return {Vector(hidden, 0.0), Vector(hidden, 0.0)}; }
};

struct ModelDims {
  std::size_t visual_dim = 64;
  std::size_t visual_cells = 4;
  std::size_t depth_dim = 32;
  std::size_t depth_cells = 4;  // the w*h spatial extent of depth features
  std::size_t instr_dim = 32;
  std::size_t instr_hidden = 32;
  std::size_t hidden = 64;
  std::size_t action_embed_dim = 32;
};

struct StepOutput {
  Vector logits;
  Vector probs;
  Action action;
};

// Recurrent policy over mean-pooled visual, concatenated depth, and the final
// LSTM encoding of the instruction.
struct Seq2SeqParams {
  ModelDims dims;
  LstmCell instr_encoder;
  GruCell gru;
  Matrix w_action;  // 4 x hidden
  Vector b_action;  // 4
};

struct Seq2SeqState {
  Vector h;
};

Seq2SeqParams make_seq2seq_params(const ModelDims& dims, std::uint64_t seed);
Seq2SeqState seq2seq_initial_state(const Seq2SeqParams& params);
std::pair<StepOutput, Seq2SeqState> seq2seq_step(const FeatureSet& features,
                                                 const Seq2SeqState& state,
                                                 const Seq2SeqParams& params);

// Two-recurrence model with instruction-conditioned attention over visual and
// depth features and a learned embedding of the previous action.
struct CmaParams {
  ModelDims dims;
  LstmCell instr_forward;
  LstmCell instr_backward;
  GruCell gru_attn;
  GruCell gru_action;
  AttnParams attn_instr;   // query: h_attn, inputs: bi-encoded tokens
  AttnParams attn_visual;  // query: attended instruction
  AttnParams attn_depth;
  Matrix action_embedding; // 4 x action_embed_dim
  Matrix w_action;
  Vector b_action;
};

struct CmaState {
  Vector h_attn;
  Vector h_action;
};

CmaParams make_cma_params(const ModelDims& dims, std::uint64_t seed);
CmaState cma_initial_state(const CmaParams& params);

// Forward+backward LSTM over the token encodings with per-position states
// concatenated (dimension 2 * instr_hidden).
std::vector<Vector> encode_instruction_bidirectional(const CmaParams& params,
                                                     const std::vector<Vector>& tokens);

std::pair<StepOutput, CmaState> cma_step(const FeatureSet& features, Action prev_action,
                                         const CmaState& state, const CmaParams& params);

// Deterministic stand-in for pretrained perception: features are hashes of
// (pose, env seed) mapped into [-1, 1], so rollouts are reproducible without
// any encoder weights.
class FeatureStub {
 public:
  FeatureStub(const ModelDims& dims, std::uint64_t env_seed)
      : dims_(dims), env_seed_(env_seed) {}

  FeatureSet features_for(const Pose& pose, const std::vector<int>& instruction_tokens) const;
  Vector token_embedding(int token) const;
  const ModelDims& dims() const { return dims_; }

 private:
  ModelDims dims_;
  std::uint64_t env_seed_;
};

// ---------------------------------------------------------------------------
// Gradient verification

// A scalar function of a flat parameter vector with its analytic gradient.
struct DiffProblem {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  Vector params;
};

// Central finite differences against the analytic gradient; returns the max
// relative error over parameters. Throws NonFiniteGradient.
double grad_check(const DiffProblem& problem, double epsilon);

// L = r . attn(inputs, q; W_K), parameters = flattened W_K.
DiffProblem attn_grad_problem(const std::vector<Vector>& inputs, const Vector& query,
                              const Matrix& w_key, const Vector& loss_weights);
// L = r . (W_a h + b_a), parameters = [W_a | b_a]; linear, so agreement is
// tight to rounding.
DiffProblem action_head_linear_problem(const Vector& h, const Matrix& w_action,
                                       const Vector& b_action, const Vector& loss_weights);
// L = -log softmax(W_a h + b_a)[target].
DiffProblem action_head_ce_problem(const Vector& h, const Matrix& w_action,
                                   const Vector& b_action, int target);
// L = 1 regardless of parameters; gradient is exactly zero.
DiffProblem constant_problem(std::size_t n_params);

// ---------------------------------------------------------------------------
// Parameter files: text tensors with a shape header, preceded by a dims line.

void save_seq2seq_params(const std::string& path, const Seq2SeqParams& params);
Seq2SeqParams load_seq2seq_params(const std::string& path);
void save_cma_params(const std::string& path, const CmaParams& params);
CmaParams load_cma_params(const std::string& path);

}  // namespace navbench
