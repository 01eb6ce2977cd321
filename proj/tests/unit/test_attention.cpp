#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "navbench/attention.hpp"
#include "navbench/errors.hpp"
#include "navbench/rng.hpp"
#include "oracles.hpp"

using namespace navbench;

namespace {

Vector random_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (double& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

std::vector<Vector> random_vectors(Rng& rng, std::size_t count, std::size_t dim) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_vector(rng, dim));
  return out;
}

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (double& x : m.data) x = rng.uniform(-1.0, 1.0);
  return m;
}

FeatureSet random_features(Rng& rng, const ModelDims& d, std::size_t tokens) {
  FeatureSet f;
  f.visual = random_vectors(rng, d.visual_cells, d.visual_dim);
  f.depth = random_vectors(rng, d.depth_cells, d.depth_dim);
  f.instruction = random_vectors(rng, tokens, d.instr_dim);
  return f;
}

}  // namespace

TEST_CASE("mean_pool basics and Kahan oracle") {
  CHECK(mean_pool({{3.0, -1.0}}) == Vector{3.0, -1.0});
  CHECK(mean_pool({{1.0, 0.0}, {0.0, 1.0}}) == Vector{0.5, 0.5});
  CHECK_THROWS_AS(mean_pool({}), EmptyInput);
  CHECK_THROWS_AS(mean_pool({{1.0}, {1.0, 2.0}}), DimensionMismatch);

  Rng rng(61);
  const auto vs = random_vectors(rng, 16, 8);
  const Vector got = mean_pool(vs);
  const auto want = oracles::mean_pool_kahan(vs);
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-12);
}

TEST_CASE("attention on a single input is the identity") {
  Rng rng(62);
  const auto x = random_vector(rng, 6);
  AttnParams p{random_matrix(rng, 4, 6)};
  const auto q = random_vector(rng, 4);
  const AttnResult r = attn({x}, q, p);
  CHECK(r.weights == Vector{1.0});
  CHECK(r.output == x);
}

TEST_CASE("attention over identical inputs splits weights evenly") {
  Rng rng(63);
  const auto x = random_vector(rng, 6);
  AttnParams p{random_matrix(rng, 4, 6)};
  const auto q = random_vector(rng, 4);
  const AttnResult r = attn({x, x}, q, p);
  CHECK(r.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t i = 0; i < 6; ++i) CHECK(r.output[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("attention matches the direct recompute oracle") {
  Rng rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inputs = random_vectors(rng, 5, 8);
    const auto q = random_vector(rng, 4);
    const Matrix w = random_matrix(rng, 4, 8);
    const AttnResult r = attn(inputs, q, AttnParams{w});
    std::vector<std::vector<double>> w_rows(4, std::vector<double>(8));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 8; ++b) w_rows[a][b] = w.at(a, b);
    const auto want = oracles::attn_output_direct(inputs, q, w_rows);
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(r.output[i] - want[i]) <= 1e-12);
    double sum = 0.0;
    for (double a : r.weights) {
      CHECK(a >= 0.0);
      sum += a;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    // output inside the per-coordinate hull of the inputs
    for (std::size_t c = 0; c < 8; ++c) {
      double lo = inputs[0][c], hi = inputs[0][c];
      for (const auto& x : inputs) {
        lo = std::min(lo, x[c]);
        hi = std::max(hi, x[c]);
      }
      CHECK(r.output[c] >= lo - 1e-12);
      CHECK(r.output[c] <= hi + 1e-12);
    }
  }
}

TEST_CASE("scaling the query keeps the output in the hull") {
  Rng rng(65);
  const auto inputs = random_vectors(rng, 6, 5);
  const auto q = random_vector(rng, 3);
  const Matrix w = random_matrix(rng, 3, 5);
  for (double lambda : {0.5, 2.0, 10.0}) {
    Vector scaled = q;
    for (double& v : scaled) v *= lambda;
    const AttnResult r = attn(inputs, scaled, AttnParams{w});
    for (std::size_t c = 0; c < 5; ++c) {
      double lo = inputs[0][c], hi = inputs[0][c];
      for (const auto& x : inputs) {
        lo = std::min(lo, x[c]);
        hi = std::max(hi, x[c]);
      }
      CHECK(r.output[c] >= lo - 1e-12);
      CHECK(r.output[c] <= hi + 1e-12);
    }
  }
}

TEST_CASE("attention dimension checks") {
  Rng rng(66);
  const auto inputs = random_vectors(rng, 3, 5);
  CHECK_THROWS_AS(attn(inputs, random_vector(rng, 4), AttnParams{random_matrix(rng, 3, 5)}),
                  DimensionMismatch);
  CHECK_THROWS_AS(attn(inputs, random_vector(rng, 3), AttnParams{random_matrix(rng, 3, 4)}),
                  DimensionMismatch);
  CHECK_THROWS_AS(attn({}, random_vector(rng, 3), AttnParams{random_matrix(rng, 3, 5)}),
                  EmptyInput);
}

TEST_CASE("action head ties, shift invariance, and oracle probs") {
  const Vector h{1.0, -1.0};
  Matrix w(4, 2);  // all-zero weights: equal logits
  const Vector b{0.0, 0.0, 0.0, 0.0};
  const auto r = action_head(h, w, b);
  for (double p : r.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.action == Action::Forward);  // tie resolved by enum order

  Rng rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector hh = random_vector(rng, 6);
    const Matrix ww = random_matrix(rng, 4, 6);
    const Vector bb = random_vector(rng, 4);
    const auto base = action_head(hh, ww, bb);
    const double c = rng.uniform(-10.0, 10.0);
    Vector shifted_b = bb;
    for (double& v : shifted_b) v += c;
    const auto shifted = action_head(hh, ww, shifted_b);
    CHECK(shifted.action == base.action);
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(shifted.probs[i] - base.probs[i]) <= 1e-12);
    // direct exp/normalize recompute
    double denom = 0.0;
    Vector direct(4);
    for (int i = 0; i < 4; ++i) {
      direct[i] = std::exp(base.logits[i]);
      denom += direct[i];
    }
    for (int i = 0; i < 4; ++i) CHECK(std::abs(base.probs[i] - direct[i] / denom) <= 1e-12);
  }
}

TEST_CASE("seq2seq step runs the full dataflow deterministically") {
  const ModelDims dims{};
  const Seq2SeqParams params = make_seq2seq_params(dims, 42);
  Rng rng(68);
  const FeatureSet f = random_features(rng, dims, 7);

  Seq2SeqState s1 = seq2seq_initial_state(params);
  Seq2SeqState s2 = seq2seq_initial_state(params);
  for (int t = 0; t < 20; ++t) {
    auto [o1, n1] = seq2seq_step(f, s1, params);
    auto [o2, n2] = seq2seq_step(f, s2, params);
    CHECK(o1.probs == o2.probs);  // bit-identical
    CHECK(o1.action == o2.action);
    s1 = n1;
    s2 = n2;
  }
}

TEST_CASE("cma attention stages pass lone vectors through") {
  ModelDims dims{};
  dims.visual_cells = 1;
  dims.depth_cells = 1;
  const CmaParams params = make_cma_params(dims, 9);
  Rng rng(69);
  FeatureSet f;
  f.visual = random_vectors(rng, 1, dims.visual_dim);
  f.depth = random_vectors(rng, 1, dims.depth_dim);
  f.instruction = random_vectors(rng, 1, dims.instr_dim);

  const auto s_enc = encode_instruction_bidirectional(params, f.instruction);
  REQUIRE(s_enc.size() == 1);
  const CmaState st = cma_initial_state(params);
  auto [out, next] = cma_step(f, Action::Stop, st, params);
  CHECK(out.probs.size() == 4);
  // with single-element sets, each attention output equals its lone input
  const AttnResult s_hat = attn(s_enc, next.h_attn, params.attn_instr);
  CHECK(s_hat.output == s_enc[0]);
  const AttnResult v_hat = attn(f.visual, s_hat.output, params.attn_visual);
  CHECK(v_hat.output == f.visual[0]);
}

TEST_CASE("cma visual attention is permutation invariant") {
  const ModelDims dims{};
  const CmaParams params = make_cma_params(dims, 10);
  Rng rng(70);
  FeatureSet f = random_features(rng, dims, 5);
  FeatureSet g = f;
  std::reverse(g.visual.begin(), g.visual.end());

  const CmaState st = cma_initial_state(params);
  auto [of, nf] = cma_step(f, Action::Forward, st, params);
  auto [og, ng] = cma_step(g, Action::Forward, st, params);
  for (int i = 0; i < 4; ++i) CHECK(of.probs[i] == doctest::Approx(og.probs[i]).epsilon(1e-9));
}

TEST_CASE("cma steps are reproducible over a rollout") {
  const ModelDims dims{};
  const CmaParams params = make_cma_params(dims, 11);
  Rng rng(71);
  std::vector<FeatureSet> frames;
  for (int t = 0; t < 20; ++t) frames.push_back(random_features(rng, dims, 6));

  CmaState a = cma_initial_state(params);
  CmaState b = cma_initial_state(params);
  Action pa = Action::Stop, pb = Action::Stop;
  for (int t = 0; t < 20; ++t) {
    auto [oa, na] = cma_step(frames[t], pa, a, params);
    auto [ob, nb] = cma_step(frames[t], pb, b, params);
    CHECK(oa.probs == ob.probs);
    a = na;
    b = nb;
    pa = oa.action;
    pb = ob.action;
  }
}

TEST_CASE("gradient checks") {
  Rng rng(72);
  // attention: 4 inputs of dim 6, query dim 3
  const auto inputs = random_vectors(rng, 4, 6);
  const auto q = random_vector(rng, 3);
  const Matrix w = random_matrix(rng, 3, 6);
  const auto r = random_vector(rng, 6);
  CHECK(grad_check(attn_grad_problem(inputs, q, w, r), 1e-5) < 1e-4);

  const Vector h = random_vector(rng, 5);
  const Matrix wa = random_matrix(rng, 4, 5);
  const Vector ba = random_vector(rng, 4);
  CHECK(grad_check(action_head_linear_problem(h, wa, ba, random_vector(rng, 4)), 1e-5) < 1e-6);
  CHECK(grad_check(action_head_ce_problem(h, wa, ba, 2), 1e-5) < 1e-4);
  CHECK(grad_check(constant_problem(10), 1e-4) == 0.0);
}

TEST_CASE("parameter files round-trip") {
  const ModelDims dims{};
  const CmaParams params = make_cma_params(dims, 123);
  save_cma_params("cma_params_test.txt", params);
  const CmaParams loaded = load_cma_params("cma_params_test.txt");
  Rng rng(73);
  const FeatureSet f = random_features(rng, dims, 4);
  auto [o1, s1] = cma_step(f, Action::Forward, cma_initial_state(params), params);
  auto [o2, s2] = cma_step(f, Action::Forward, cma_initial_state(loaded), loaded);
  CHECK(o1.probs == o2.probs);
  CHECK(o1.logits == o2.logits);

  const Seq2SeqParams sp = make_seq2seq_params(dims, 5);
  save_seq2seq_params("s2s_params_test.txt", sp);
  const Seq2SeqParams sl = load_seq2seq_params("s2s_params_test.txt");
  auto [a1, t1] = seq2seq_step(f, seq2seq_initial_state(sp), sp);
  auto [a2, t2] = seq2seq_step(f, seq2seq_initial_state(sl), sl);
  CHECK(a1.probs == a2.probs);
}

TEST_CASE("feature stub is deterministic and pose sensitive") {
  const ModelDims dims{};
  const FeatureStub stub(dims, 777);
  const Pose p{1.0, 2.0, 0.0, 45.0};
  const auto f1 = stub.features_for(p, {1, 2});
  const auto f2 = stub.features_for(p, {1, 2});
  CHECK(f1.visual == f2.visual);
  CHECK(f1.depth == f2.depth);
  CHECK(f1.instruction == f2.instruction);
  const auto f3 = stub.features_for(Pose{1.25, 2.0, 0.0, 45.0}, {1, 2});
  CHECK(f1.visual != f3.visual);
  for (const auto& v : f1.visual) {
    for (double x : v) {
      CHECK(x >= -1.0);
      CHECK(x <= 1.0);
    }
  }
}
