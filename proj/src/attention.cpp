#include "navbench/attention.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "navbench/errors.hpp"
#include "navbench/rng.hpp"

namespace navbench {

Vector matvec(const Matrix& w, const Vector& x, const std::string& stage) {
  if (w.cols != x.size()) throw DimensionMismatch(stage);
  Vector y(w.rows, 0.0);
  for (std::size_t r = 0; r < w.rows; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < w.cols; ++c) acc += w.at(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

Vector concat(const std::vector<Vector>& parts) {
  Vector out;
  for (const Vector& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Vector mean_pool(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw EmptyInput("mean_pool input");
  const std::size_t dim = vectors.front().size();
  Vector out(dim, 0.0);
  for (const Vector& v : vectors) {
    if (v.size() != dim) throw DimensionMismatch("mean_pool");
    for (std::size_t i = 0; i < dim; ++i) out[i] += v[i];
  }
  for (double& x : out) x /= static_cast<double>(vectors.size());
  return out;
}

Vector softmax(const Vector& logits) {
  if (logits.empty()) throw EmptyInput("softmax logits");
  const double mx = *std::max_element(logits.begin(), logits.end());
  Vector out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

AttnResult attn(const std::vector<Vector>& inputs, const Vector& query, const AttnParams& params) {
  if (inputs.empty()) throw EmptyInput("attention inputs");
  const std::size_t dx = inputs.front().size();
  const std::size_t dq = query.size();
  if (dq == 0) throw DimensionMismatch("attention query");
  if (params.w_key.rows != dq || params.w_key.cols != dx) throw DimensionMismatch("attention key projection");

  Vector scores(inputs.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(dq));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].size() != dx) throw DimensionMismatch("attention inputs");
    const Vector key = matvec(params.w_key, inputs[i], "attention key projection");
    double dot = 0.0;
    for (std::size_t a = 0; a < dq; ++a) dot += key[a] * query[a];
    scores[i] = dot * scale;
  }
  AttnResult res;
  res.weights = softmax(scores);
  res.output.assign(dx, 0.0);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t c = 0; c < dx; ++c) res.output[c] += res.weights[i] * inputs[i][c];
  }
  return res;
}

ActionHeadResult action_head(const Vector& h, const Matrix& w_action, const Vector& b_action) {
  if (w_action.rows != 4 || b_action.size() != 4) throw DimensionMismatch("action head output");
  Vector logits = matvec(w_action, h, "action head");
  for (std::size_t i = 0; i < 4; ++i) logits[i] += b_action[i];
  ActionHeadResult res;
  res.logits = logits;
  res.probs = softmax(logits);
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    if (res.probs[i] > res.probs[best]) best = i;  // strict: ties keep enum order
  }
  res.action = static_cast<Action>(best);
  return res;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Vector GruCell::step(const Vector& x, const Vector& h, const std::string& stage) const {
  if (h.size() != hidden) throw DimensionMismatch(stage + " hidden state");
  const Vector wx = matvec(w_input, x, stage + " input weights");
  const Vector uh = matvec(w_hidden, h, stage + " hidden weights");
  Vector out(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    const double r = sigmoid(wx[i] + uh[i] + bias[i]);
    const double z = sigmoid(wx[hidden + i] + uh[hidden + i] + bias[hidden + i]);
    const double n = std::tanh(wx[2 * hidden + i] + r * uh[2 * hidden + i] + bias[2 * hidden + i]);
    out[i] = (1.0 - z) * n + z * h[i];
  }
  return out;
}

LstmCell::State LstmCell::step(const Vector& x, const State& s, const std::string& stage) const {
  if (s.h.size() != hidden || s.c.size() != hidden) throw DimensionMismatch(stage + " state");
  const Vector wx = matvec(w_input, x, stage + " input weights");
  const Vector uh = matvec(w_hidden, s.h, stage + " hidden weights");
  State out{Vector(hidden), Vector(hidden)};
  for (std::size_t j = 0; j < hidden; ++j) {
    const double i_g = sigmoid(wx[j] + uh[j] + bias[j]);
    const double f_g = sigmoid(wx[hidden + j] + uh[hidden + j] + bias[hidden + j]);
    const double g_g = std::tanh(wx[2 * hidden + j] + uh[2 * hidden + j] + bias[2 * hidden + j]);
    const double o_g = sigmoid(wx[3 * hidden + j] + uh[3 * hidden + j] + bias[3 * hidden + j]);
    out.c[j] = f_g * s.c[j] + i_g * g_g;
    out.h[j] = o_g * std::tanh(out.c[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Initialization

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (double& x : m.data) x = rng.uniform(-0.1, 0.1);
  return m;
}

Vector random_vector(std::size_t n, Rng& rng) {
  Vector v(n);
  for (double& x : v) x = rng.uniform(-0.1, 0.1);
  return v;
}

GruCell random_gru(std::size_t input_dim, std::size_t hidden, Rng& rng) {
  GruCell cell;
  cell.hidden = hidden;
  cell.w_input = random_matrix(3 * hidden, input_dim, rng);
  cell.w_hidden = random_matrix(3 * hidden, hidden, rng);
  cell.bias = random_vector(3 * hidden, rng);
  return cell;
}

LstmCell random_lstm(std::size_t input_dim, std::size_t hidden, Rng& rng) {
  LstmCell cell;
  cell.hidden = hidden;
  cell.w_input = random_matrix(4 * hidden, input_dim, rng);
  cell.w_hidden = random_matrix(4 * hidden, hidden, rng);
  cell.bias = random_vector(4 * hidden, rng);
  return cell;
}

}  // namespace

Seq2SeqParams make_seq2seq_params(const ModelDims& dims, std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ 0x5e925e92d1ce4e5bULL));
  Seq2SeqParams p;
  p.dims = dims;
  p.instr_encoder = random_lstm(dims.instr_dim, dims.instr_hidden, rng);
  const std::size_t gru_in = dims.visual_dim + dims.depth_dim * dims.depth_cells + dims.instr_hidden;
  p.gru = random_gru(gru_in, dims.hidden, rng);
  p.w_action = random_matrix(4, dims.hidden, rng);
  p.b_action = random_vector(4, rng);
  return p;
}

Seq2SeqState seq2seq_initial_state(const Seq2SeqParams& params) {
  return Seq2SeqState{Vector(params.dims.hidden, 0.0)};
}

std::pair<StepOutput, Seq2SeqState> seq2seq_step(const FeatureSet& features,
                                                 const Seq2SeqState& state,
                                                 const Seq2SeqParams& params) {
  if (features.instruction.empty()) throw EmptyInput("instruction encodings");
  if (features.depth.empty()) throw EmptyInput("depth features");
  const Vector v_bar = mean_pool(features.visual);
  const Vector d_bar = concat(features.depth);

  LstmCell::State enc = params.instr_encoder.initial();
  for (const Vector& token : features.instruction) {
    enc = params.instr_encoder.step(token, enc, "instruction encoder");
  }

  const Vector x = concat({v_bar, d_bar, enc.h});
  Seq2SeqState next{params.gru.step(x, state.h, "policy recurrence")};
  const ActionHeadResult head = action_head(next.h, params.w_action, params.b_action);
  return {StepOutput{head.logits, head.probs, head.action}, std::move(next)};
}

CmaParams make_cma_params(const ModelDims& dims, std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ 0xc3a5c85c97cb3127ULL));
  CmaParams p;
  p.dims = dims;
  p.instr_forward = random_lstm(dims.instr_dim, dims.instr_hidden, rng);
  p.instr_backward = random_lstm(dims.instr_dim, dims.instr_hidden, rng);
  const std::size_t d_bar_dim = dims.depth_dim * dims.depth_cells;
  p.gru_attn = random_gru(dims.visual_dim + d_bar_dim + dims.action_embed_dim, dims.hidden, rng);
  const std::size_t s_dim = 2 * dims.instr_hidden;
  p.attn_instr.w_key = random_matrix(dims.hidden, s_dim, rng);
  p.attn_visual.w_key = random_matrix(s_dim, dims.visual_dim, rng);
  p.attn_depth.w_key = random_matrix(s_dim, dims.depth_dim, rng);
  p.gru_action = random_gru(s_dim + dims.visual_dim + dims.depth_dim + dims.action_embed_dim + dims.hidden,
                            dims.hidden, rng);
  p.action_embedding = random_matrix(4, dims.action_embed_dim, rng);
  p.w_action = random_matrix(4, dims.hidden, rng);
  p.b_action = random_vector(4, rng);
  return p;
}

CmaState cma_initial_state(const CmaParams& params) {
  return CmaState{Vector(params.dims.hidden, 0.0), Vector(params.dims.hidden, 0.0)};
}

std::vector<Vector> encode_instruction_bidirectional(const CmaParams& params,
                                                     const std::vector<Vector>& tokens) {
  if (tokens.empty()) throw EmptyInput("instruction encodings");
  const std::size_t n = tokens.size();
  std::vector<Vector> forward(n), backward(n);
  LstmCell::State f = params.instr_forward.initial();
  for (std::size_t t = 0; t < n; ++t) {
    f = params.instr_forward.step(tokens[t], f, "forward instruction encoder");
    forward[t] = f.h;
  }
  LstmCell::State b = params.instr_backward.initial();
  for (std::size_t t = n; t-- > 0;) {
    b = params.instr_backward.step(tokens[t], b, "backward instruction encoder");
    backward[t] = b.h;
  }
  std::vector<Vector> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = concat({forward[t], backward[t]});
  return out;
}

std::pair<StepOutput, CmaState> cma_step(const FeatureSet& features, Action prev_action,
                                         const CmaState& state, const CmaParams& params) {
  if (features.depth.empty()) throw EmptyInput("depth features");
  const Vector v_bar = mean_pool(features.visual);
  const Vector d_bar = concat(features.depth);
  Vector a_emb(params.dims.action_embed_dim);
  for (std::size_t c = 0; c < a_emb.size(); ++c) {
    a_emb[c] = params.action_embedding.at(static_cast<std::size_t>(prev_action), c);
  }

  CmaState next = state;
  next.h_attn = params.gru_attn.step(concat({v_bar, d_bar, a_emb}), state.h_attn, "attention recurrence");

  const std::vector<Vector> s_enc = encode_instruction_bidirectional(params, features.instruction);
  const AttnResult s_hat = attn(s_enc, next.h_attn, params.attn_instr);
  const AttnResult v_hat = attn(features.visual, s_hat.output, params.attn_visual);
  const AttnResult d_hat = attn(features.depth, s_hat.output, params.attn_depth);

  const Vector x = concat({s_hat.output, v_hat.output, d_hat.output, a_emb, next.h_attn});
  next.h_action = params.gru_action.step(x, state.h_action, "action recurrence");
  const ActionHeadResult head = action_head(next.h_action, params.w_action, params.b_action);
  return {StepOutput{head.logits, head.probs, head.action}, std::move(next)};
}

// ---------------------------------------------------------------------------
// Feature stub

namespace {

double hash_to_unit(std::uint64_t h) {
  // map 53 bits to [-1, 1]
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

Vector hashed_vector(std::uint64_t base, std::size_t dim) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = hash_to_unit(splitmix64(base + i));
  return v;
}

}  // namespace

FeatureSet FeatureStub::features_for(const Pose& pose, const std::vector<int>& instruction_tokens) const {
  // quantize the pose so equal poses hash identically
  const std::int64_t qx = static_cast<std::int64_t>(std::llround(pose.x * 100.0));
  const std::int64_t qy = static_cast<std::int64_t>(std::llround(pose.y * 100.0));
  const std::int64_t qh = static_cast<std::int64_t>(std::llround(pose.heading));
  std::uint64_t h = env_seed_;
  h = splitmix64(h ^ static_cast<std::uint64_t>(qx));
  h = splitmix64(h ^ static_cast<std::uint64_t>(qy));
  h = splitmix64(h ^ static_cast<std::uint64_t>(qh));

  FeatureSet f;
  for (std::size_t i = 0; i < dims_.visual_cells; ++i) {
    f.visual.push_back(hashed_vector(splitmix64(h ^ (0x1000 + i)), dims_.visual_dim));
  }
  for (std::size_t i = 0; i < dims_.depth_cells; ++i) {
    f.depth.push_back(hashed_vector(splitmix64(h ^ (0x2000 + i)), dims_.depth_dim));
  }
  for (int tok : instruction_tokens) f.instruction.push_back(token_embedding(tok));
  if (f.instruction.empty()) f.instruction.push_back(token_embedding(0));
  return f;
}

Vector FeatureStub::token_embedding(int token) const {
  return hashed_vector(splitmix64(env_seed_ ^ (0x9e37ULL + static_cast<std::uint64_t>(token) * 2654435761ULL)),
                       dims_.instr_dim);
}

// ---------------------------------------------------------------------------
// Gradient verification

double grad_check(const DiffProblem& problem, double epsilon) {
  const Vector analytic = problem.gradient(problem.params);
  double max_rel = 0.0;
  Vector p = problem.params;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double keep = p[i];
    p[i] = keep + epsilon;
    const double hi = problem.value(p);
    p[i] = keep - epsilon;
    const double lo = problem.value(p);
    p[i] = keep;
    const double numeric = (hi - lo) / (2.0 * epsilon);
    const double a = analytic[i];
    if (!std::isfinite(numeric) || !std::isfinite(a)) throw NonFiniteGradient();
    const double rel = std::abs(a - numeric) / std::max(std::abs(a) + std::abs(numeric), 1e-10);
    max_rel = std::max(max_rel, rel);
  }
  return max_rel;
}

DiffProblem attn_grad_problem(const std::vector<Vector>& inputs, const Vector& query,
                              const Matrix& w_key, const Vector& loss_weights) {
  const std::size_t dq = query.size();
  const std::size_t dx = inputs.front().size();
  DiffProblem prob;
  prob.params = w_key.data;
  prob.value = [inputs, query, dq, dx, loss_weights](const Vector& p) {
    AttnParams ap;
    ap.w_key = Matrix(dq, dx);
    ap.w_key.data = p;
    const AttnResult r = attn(inputs, query, ap);
    double loss = 0.0;
    for (std::size_t c = 0; c < dx; ++c) loss += loss_weights[c] * r.output[c];
    return loss;
  };
  prob.gradient = [inputs, query, dq, dx, loss_weights](const Vector& p) {
    AttnParams ap;
    ap.w_key = Matrix(dq, dx);
    ap.w_key.data = p;
    const AttnResult r = attn(inputs, query, ap);
    // dL/dalpha_i = r_loss . x_i
    Vector g(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dx; ++c) acc += loss_weights[c] * inputs[i][c];
      g[i] = acc;
    }
    // softmax backward: de_i = alpha_i * (g_i - sum_j alpha_j g_j)
    double mix = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) mix += r.weights[i] * g[i];
    const double scale = 1.0 / std::sqrt(static_cast<double>(dq));
    Vector grad(p.size(), 0.0);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const double de = r.weights[i] * (g[i] - mix) * scale;
      for (std::size_t a = 0; a < dq; ++a) {
        for (std::size_t b = 0; b < dx; ++b) {
          grad[a * dx + b] += de * query[a] * inputs[i][b];
        }
      }
    }
    return grad;
  };
  return prob;
}

namespace {

Vector pack_head(const Matrix& w, const Vector& b) {
  Vector p = w.data;
  p.insert(p.end(), b.begin(), b.end());
  return p;
}

void unpack_head(const Vector& p, std::size_t hidden, Matrix& w, Vector& b) {
  w = Matrix(4, hidden);
  std::copy(p.begin(), p.begin() + 4 * hidden, w.data.begin());
  b.assign(p.begin() + 4 * hidden, p.end());
}

}  // namespace

DiffProblem action_head_linear_problem(const Vector& h, const Matrix& w_action,
                                       const Vector& b_action, const Vector& loss_weights) {
  const std::size_t hidden = h.size();
  DiffProblem prob;
  prob.params = pack_head(w_action, b_action);
  prob.value = [h, hidden, loss_weights](const Vector& p) {
    Matrix w;
    Vector b;
    unpack_head(p, hidden, w, b);
    const ActionHeadResult r = action_head(h, w, b);
    double loss = 0.0;
    for (std::size_t i = 0; i < 4; ++i) loss += loss_weights[i] * r.logits[i];
    return loss;
  };
  prob.gradient = [h, hidden, loss_weights](const Vector&) {
    Vector grad(4 * hidden + 4, 0.0);
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < hidden; ++b) grad[a * hidden + b] = loss_weights[a] * h[b];
      grad[4 * hidden + a] = loss_weights[a];
    }
    return grad;
  };
  return prob;
}

DiffProblem action_head_ce_problem(const Vector& h, const Matrix& w_action,
                                   const Vector& b_action, int target) {
  const std::size_t hidden = h.size();
  DiffProblem prob;
  prob.params = pack_head(w_action, b_action);
  prob.value = [h, hidden, target](const Vector& p) {
    Matrix w;
    Vector b;
    unpack_head(p, hidden, w, b);
    const ActionHeadResult r = action_head(h, w, b);
    return -std::log(r.probs[static_cast<std::size_t>(target)]);
  };
  prob.gradient = [h, hidden, target](const Vector& p) {
    Matrix w;
    Vector b;
    unpack_head(p, hidden, w, b);
    const ActionHeadResult r = action_head(h, w, b);
    Vector grad(4 * hidden + 4, 0.0);
    for (std::size_t a = 0; a < 4; ++a) {
      const double dlogit = r.probs[a] - (static_cast<int>(a) == target ? 1.0 : 0.0);
      for (std::size_t c = 0; c < hidden; ++c) grad[a * hidden + c] = dlogit * h[c];
      grad[4 * hidden + a] = dlogit;
    }
    return grad;
  };
  return prob;
}

DiffProblem constant_problem(std::size_t n_params) {
  DiffProblem prob;
  prob.params.assign(n_params, 0.5);
  prob.value = [](const Vector&) { return 1.0; };
  prob.gradient = [n_params](const Vector&) { return Vector(n_params, 0.0); };
  return prob;
}

// ---------------------------------------------------------------------------
// Parameter files

namespace {

void write_tensor(std::ostream& out, const std::string& name, const Matrix& m) {
  out << "tensor " << name << " " << m.rows << " " << m.cols << "\n";
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) out << ' ';
      out << m.at(r, c);
    }
    out << "\n";
  }
}

void write_tensor(std::ostream& out, const std::string& name, const Vector& v) {
  Matrix m(1, v.size());
  m.data = v;
  write_tensor(out, name, m);
}

class TensorReader {
 public:
  explicit TensorReader(std::istream& in) : in_(in) {}

  Matrix read(const std::string& expected_name) {
    std::string kw, name;
    std::size_t rows = 0, cols = 0;
    if (!(in_ >> kw >> name >> rows >> cols) || kw != "tensor" || name != expected_name)
      throw IoError("parameter file: expected tensor '" + expected_name + "'");
    Matrix m(rows, cols);
    for (double& x : m.data) {
      if (!(in_ >> x)) throw IoError("parameter file: truncated tensor '" + expected_name + "'");
    }
    return m;
  }

  Vector read_vector(const std::string& expected_name) { return read(expected_name).data; }

 private:
  std::istream& in_;
};

void write_dims(std::ostream& out, const ModelDims& d) {
  out << "dims " << d.visual_dim << " " << d.visual_cells << " " << d.depth_dim << " "
      << d.depth_cells << " " << d.instr_dim << " " << d.instr_hidden << " " << d.hidden << " "
      << d.action_embed_dim << "\n";
}

ModelDims read_dims(std::istream& in) {
  std::string kw;
  ModelDims d;
  if (!(in >> kw >> d.visual_dim >> d.visual_cells >> d.depth_dim >> d.depth_cells >> d.instr_dim >>
        d.instr_hidden >> d.hidden >> d.action_embed_dim) ||
      kw != "dims")
    throw IoError("parameter file: missing dims header");
  return d;
}

void write_gru(std::ostream& out, const std::string& prefix, const GruCell& cell) {
  write_tensor(out, prefix + ".w_input", cell.w_input);
  write_tensor(out, prefix + ".w_hidden", cell.w_hidden);
  write_tensor(out, prefix + ".bias", cell.bias);
}

GruCell read_gru(TensorReader& r, const std::string& prefix, std::size_t hidden) {
  GruCell cell;
  cell.w_input = r.read(prefix + ".w_input");
  cell.w_hidden = r.read(prefix + ".w_hidden");
  cell.bias = r.read_vector(prefix + ".bias");
  cell.hidden = hidden;
  return cell;
}

void write_lstm(std::ostream& out, const std::string& prefix, const LstmCell& cell) {
  write_tensor(out, prefix + ".w_input", cell.w_input);
  write_tensor(out, prefix + ".w_hidden", cell.w_hidden);
  write_tensor(out, prefix + ".bias", cell.bias);
}

LstmCell read_lstm(TensorReader& r, const std::string& prefix, std::size_t hidden) {
  LstmCell cell;
  cell.w_input = r.read(prefix + ".w_input");
  cell.w_hidden = r.read(prefix + ".w_hidden");
  cell.bias = r.read_vector(prefix + ".bias");
  cell.hidden = hidden;
  return cell;
}

}  // namespace

void save_seq2seq_params(const std::string& path, const Seq2SeqParams& p) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out.precision(17);
  write_dims(out, p.dims);
  write_lstm(out, "instr_encoder", p.instr_encoder);
  write_gru(out, "gru", p.gru);
  write_tensor(out, "w_action", p.w_action);
  write_tensor(out, "b_action", p.b_action);
}

Seq2SeqParams load_seq2seq_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Seq2SeqParams p;
  p.dims = read_dims(in);
  TensorReader r(in);
  p.instr_encoder = read_lstm(r, "instr_encoder", p.dims.instr_hidden);
  p.gru = read_gru(r, "gru", p.dims.hidden);
  p.w_action = r.read("w_action");
  p.b_action = r.read_vector("b_action");
  return p;
}

void save_cma_params(const std::string& path, const CmaParams& p) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out.precision(17);
  write_dims(out, p.dims);
  write_lstm(out, "instr_forward", p.instr_forward);
  write_lstm(out, "instr_backward", p.instr_backward);
  write_gru(out, "gru_attn", p.gru_attn);
  write_gru(out, "gru_action", p.gru_action);
  write_tensor(out, "attn_instr.w_key", p.attn_instr.w_key);
  write_tensor(out, "attn_visual.w_key", p.attn_visual.w_key);
  write_tensor(out, "attn_depth.w_key", p.attn_depth.w_key);
  write_tensor(out, "action_embedding", p.action_embedding);
  write_tensor(out, "w_action", p.w_action);
  write_tensor(out, "b_action", p.b_action);
}

CmaParams load_cma_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  CmaParams p;
  p.dims = read_dims(in);
  TensorReader r(in);
  p.instr_forward = read_lstm(r, "instr_forward", p.dims.instr_hidden);
  p.instr_backward = read_lstm(r, "instr_backward", p.dims.instr_hidden);
  p.gru_attn = read_gru(r, "gru_attn", p.dims.hidden);
  p.gru_action = read_gru(r, "gru_action", p.dims.hidden);
  p.attn_instr.w_key = r.read("attn_instr.w_key");
  p.attn_visual.w_key = r.read("attn_visual.w_key");
  p.attn_depth.w_key = r.read("attn_depth.w_key");
  p.action_embedding = r.read("action_embedding");
  p.w_action = r.read("w_action");
  p.b_action = r.read_vector("b_action");
  return p;
}

}  // namespace navbench
