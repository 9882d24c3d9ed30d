// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "jnmf/factorize.hpp"
#include "jnmf/graph.hpp"
#include "jnmf/metrics.hpp"
#include "jnmf/nls.hpp"
#include "jnmf/pipeline.hpp"
#include "jnmf/recommend.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace jnmf;
using testsupport::Rng;
using testsupport::to_sparse;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Fisher-Yates on the test generator; std::shuffle is implementation-defined.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

double f1_against(const DenseMatrix& h, const std::vector<int>& truth) {
  return average_f1(confusion(hard_assign(h), Labeling::hard(truth)));
}

Index rank_of(const DenseVector& scores, Index target) {
  Index r = 0;
  for (Index j = 0; j < scores.size(); ++j)
    if (j != target && scores(j) >= scores(target)) ++r;
  return r;
}

Outcome nls_oracle() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  double worst_gap = 0, worst_kkt = 0;
  for (int t = 0; t < 200; ++t) {
    const DenseMatrix a = rng.matrix(6, 4);
    DenseMatrix b = rng.matrix(6, 3);
    std::vector<Index> idx(static_cast<std::size_t>(b.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Index>(i);
    shuffle(idx, rng);
    for (std::size_t i = 0; i < idx.size() / 2; ++i) b.data()[idx[i]] = -b.data()[idx[i]];
    const DenseMatrix x = nls_bpp(a, b);
    for (Index j = 0; j < b.cols(); ++j) {
      const double ref = oracle::nnls_exhaustive(a, b.col(j));
      worst_gap = std::max(worst_gap, std::abs((a * x.col(j) - b.col(j)).squaredNorm() - ref));
      worst_kkt = std::max(worst_kkt, oracle::kkt_residual(a, b.col(j), x.col(j)));
    }
  }
  const double secs = seconds_since(t0);
  return {worst_gap <= 1e-8 && worst_kkt <= 1e-10 && secs < 5.0,
          fmt("max objective gap %.2e, max KKT residual %.2e, %.2f s", worst_gap, worst_kkt, secs)};
}

Outcome monotone_descent() {
  const auto t0 = Clock::now();
  Rng rng(1002);
  double worst_rise = -1e300, worst_final = 0;
  bool full = true;
  for (int t = 0; t < 20; ++t) {
    const DenseMatrix x = rng.matrix(30, 40), a = rng.matrix(40, 40);
    const DenseMatrix s = 0.5 * (a + a.transpose());
    FactorizeOptions o;
    o.k = 4;
    o.seed = static_cast<std::uint64_t>(t);
    o.max_sweeps = 100;
    o.rel_tol = 0.0;
    const SparseMatrix xs = to_sparse(x), ss = to_sparse(s);
    const FactorizationResult r = joint_nmf(xs, ss, o);
    full = full && r.sweeps_run == 100 && r.block_history.size() == 300;
    double prev = r.initial_objective;
    for (double v : r.block_history) {
      worst_rise = std::max(worst_rise, v - prev);
      prev = v;
    }
    // The recorded history must describe the returned factors.
    const double direct = penalized_objective(xs, ss, r.W, r.H, *r.H_tilde, r.alpha, r.beta);
    worst_final = std::max(worst_final, std::abs(direct - r.block_history.back()));
  }
  const double secs = seconds_since(t0);
  return {full && worst_rise <= 1e-9 && worst_final <= 1e-9 && secs < 60.0,
          fmt("largest block-to-block increase %.2e, history vs direct %.2e, %.2f s", worst_rise, worst_final,
              secs)};
}

Outcome planted_recovery() {
  testsupport::Planted p = testsupport::planted(2001);
  FactorizeOptions o;
  o.k = 3;
  o.trials = 5;
  const SparseMatrix x = to_sparse(p.X), s = to_sparse(p.S);
  const auto trials = run_trials(Method::Joint, &x, &s, o);
  const double clean = f1_against(trials[best_trial(trials)].H, p.labels);

  std::vector<double> joint, plain, sym;
  for (int seed = 0; seed < 10; ++seed) {
    testsupport::Planted q = testsupport::planted(3000 + static_cast<std::uint64_t>(seed));
    Rng noise(4000 + static_cast<std::uint64_t>(seed));
    const Index n = q.S.rows();
    std::vector<std::pair<Index, Index>> upper;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i <= j; ++i) upper.emplace_back(i, j);
    shuffle(upper, noise);
    for (std::size_t e = 0; e < upper.size() / 10; ++e) {
      const auto [i, j] = upper[e];
      const double v = std::max(0.0, q.S(i, j) + noise.uniform(-0.05, 0.05));
      q.S(i, j) = q.S(j, i) = v;
    }
    for (Index i = 0; i < q.X.size(); ++i) q.X.data()[i] += noise.uniform(0.0, 0.1);
    const SparseMatrix qx = to_sparse(q.X), qs = to_sparse(q.S);
    FactorizeOptions one;
    one.k = 3;
    one.seed = static_cast<std::uint64_t>(seed);
    joint.push_back(f1_against(joint_nmf(qx, qs, one).H, q.labels));
    plain.push_back(f1_against(nmf(qx, one).H, q.labels));
    sym.push_back(f1_against(symnmf(qs, one).H, q.labels));
  }
  const double mj = median(joint), mn = median(plain), ms = median(sym);
  return {clean >= 0.95 && mj >= mn - 0.02 && mj >= ms - 0.02,
          fmt("clean F1 %.4f; noisy medians joint %.4f, nmf %.4f, symnmf %.4f", clean, mj, mn, ms)};
}

Outcome degeneration() {
  Rng rng(1004);
  double worst = 0;
  bool same_length = true;
  for (int t = 0; t < 10; ++t) {
    const DenseMatrix x = rng.matrix(30, 40), a = rng.matrix(40, 40);
    const SparseMatrix xs = to_sparse(x), ss = to_sparse(0.5 * (a + a.transpose()));
    FactorizeOptions o;
    o.k = 4;
    o.seed = static_cast<std::uint64_t>(100 + t);
    const FactorizationResult base = nmf(xs, o);
    o.alpha = 0.0;
    o.beta = 0.0;
    const FactorizationResult joint = joint_nmf(xs, ss, o);
    same_length = same_length && base.objective_history.size() == joint.objective_history.size();
    for (std::size_t i = 0; i < std::min(base.objective_history.size(), joint.objective_history.size()); ++i)
      worst = std::max(worst, std::abs(base.objective_history[i] - joint.objective_history[i]));
  }
  return {same_length && worst <= 1e-9, fmt("largest history difference %.2e over 10 seeds", worst)};
}

Outcome hypergraph() {
  const DenseMatrix tri = DenseMatrix(hypergraph_similarity(make_hypergraph(3, {{0, 1}, {1, 2}, {0, 2}})));
  double fixture = 0;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) fixture = std::max(fixture, std::abs(tri(i, j) - (i == j ? 0.5 : 0.25)));

  Rng rng(1005);
  bool involution = true;
  double asym = 0, formula = 0;
  for (int t = 0; t < 50; ++t) {
    const Index nv = 3 + static_cast<Index>(rng.below(10)), ne = 2 + static_cast<Index>(rng.below(10));
    std::vector<std::vector<Index>> members(static_cast<std::size_t>(ne));
    for (auto& e : members)
      for (std::size_t i = 0, size = 1 + rng.below(4); i < size; ++i)
        e.push_back(static_cast<Index>(rng.below(static_cast<std::size_t>(nv))));
    for (Index v = 0; v < nv; ++v) members[rng.below(members.size())].push_back(v);
    const Hypergraph hg = make_hypergraph(nv, members);
    const DenseMatrix m = DenseMatrix(hg.incidence);
    involution = involution && DenseMatrix(dual_hypergraph(dual_hypergraph(hg)).incidence) == m &&
                 DenseMatrix(dual_hypergraph(hg).incidence) == m.transpose();
    const DenseMatrix s = DenseMatrix(hypergraph_similarity(hg));
    asym = std::max(asym, (s - s.transpose()).cwiseAbs().maxCoeff());
    const DenseVector dv = m.rowwise().sum(), de = m.colwise().sum().transpose();
    const DenseMatrix dense = dv.cwiseSqrt().cwiseInverse().asDiagonal() * m * de.cwiseInverse().asDiagonal() *
                              m.transpose() * dv.cwiseSqrt().cwiseInverse().asDiagonal();
    formula = std::max(formula, (s - dense).cwiseAbs().maxCoeff());
  }
  return {fixture <= 1e-14 && involution && asym <= 1e-14 && formula <= 1e-14,
          fmt("triangle error %.1e, max asymmetry %.1e, dense-formula error %.1e, ", fixture, asym, formula) +
              (involution ? "dual involution exact" : "dual involution broken")};
}

Outcome metrics_fixtures() {
  const Labeling pred = Labeling::hard({0, 1, 1, 1}), truth = Labeling::hard({0, 0, 1, 1});
  const ConfusionMatrix c = confusion(pred, truth);
  const bool counts = c.counts == std::vector<std::vector<std::int64_t>>{{1, 0}, {1, 2}};
  const double f1 = average_f1(c);
  const PairwiseScores pw = pairwise_scores(pairwise_counts(pred, truth));
  const bool exact = pw.pwf1 == 0.4 && pw.pwfpr == 0.5 && pw.pwfnr == 0.5;

  Rng rng(1006);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng.below(7);
    const std::size_t kp = 1 + rng.below(4), kt = 1 + rng.below(4);
    std::vector<int> p(n);
    for (auto& v : p) v = static_cast<int>(rng.below(kp));
    std::vector<std::vector<int>> g(n);
    const bool overlap = t % 2 == 1;
    for (auto& set : g) {
      set.push_back(static_cast<int>(rng.below(kt)));
      while (overlap && rng.coin(0.4)) set.push_back(static_cast<int>(rng.below(kt)));
    }
    const PairwiseCounts pc = pairwise_counts(Labeling::hard(p), Labeling::overlapping(g));
    const oracle::Pairs ref = oracle::pairs_naive(p, g);
    mismatches += pc.tp != ref.tp || pc.tn != ref.tn || pc.fp != ref.fp || pc.fn != ref.fn;
  }
  return {counts && std::abs(f1 - 11.0 / 15.0) <= 1e-12 && exact && mismatches == 0,
          fmt("average F1 %.15f, pairwise (%.17g, %.17g, %.17g), ", f1, pw.pwf1, pw.pwfpr, pw.pwfnr) +
              std::to_string(mismatches) + " brute-force mismatches in 1000 cases"};
}

Outcome roc() {
  Rng rng(1007);
  std::vector<double> scores;
  std::vector<bool> positive;
  for (int i = 0; i < 20; ++i) {
    scores.push_back(rng.uniform(0.6, 1.0));
    positive.push_back(true);
  }
  for (int i = 0; i < 30; ++i) {
    scores.push_back(rng.uniform(0.0, 0.4));
    positive.push_back(false);
  }
  const double perfect = roc_auc(roc_curve(scores, positive));
  std::vector<double> reversed(scores.size());
  std::transform(scores.begin(), scores.end(), reversed.begin(), [](double v) { return -v; });
  const double worst = roc_auc(roc_curve(reversed, positive));

  bool endpoints = true;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(30);
    std::vector<double> s(n);
    std::vector<bool> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(5));  // many ties
      pos[i] = rng.coin(0.5);
    }
    pos[0] = true;
    pos[1] = false;
    const auto curve = roc_curve(s, pos);
    endpoints = endpoints && curve.front().fpr == 0.0 && curve.front().tpr == 0.0 && curve.back().fpr == 1.0 &&
                curve.back().tpr == 1.0;
  }
  return {std::abs(perfect - 1.0) <= 1e-9 && std::abs(worst) <= 1e-9 && endpoints,
          fmt("separated AUC %.12f, reversed AUC %.12f, ", perfect, worst) +
              (endpoints ? "endpoints (0,0) and (1,1) on 500 tied cases" : "an endpoint is wrong")};
}

Outcome self_retrieval() {
  testsupport::Planted p = testsupport::planted(5001);
  const SparseMatrix x = to_sparse(p.X), s = to_sparse(p.S);
  FactorizeOptions o;
  o.k = 3;
  o.rel_tol = 1e-12;
  o.max_sweeps = 3000;
  o.trials = 3;
  Index joint_hits = 0, nmf1_hits = 0;
  const RecommendationModel joint = train_joint(x, s, o);
  const RecommendationModel text = train_nmf1(x, o);
  for (Index j = 0; j < x.cols(); ++j) {
    joint_hits += rank_of(score_cosine(joint.H, project_document(joint.W, p.X.col(j))), j) == 0;
    nmf1_hits += rank_of(score_cosine(text.H, project_document(text.W, p.X.col(j))), j) == 0;
  }
  double worst_cos = 1.0;
  o.trials = 1;
  for (Index j : {0, 13, 29, 44, 59}) {
    const Nmf2Coordinates c = nmf2_coordinates(x, p.X.col(j), o);
    worst_cos = std::min(worst_cos, c.h.dot(c.H.col(j)) / (c.h.norm() * c.H.col(j).norm()));
  }
  const Index n = x.cols();
  return {joint_hits == n && nmf1_hits == n && worst_cos >= 0.99,
          "top-1 joint " + std::to_string(joint_hits) + "/" + std::to_string(n) + ", nmf-1 " +
              std::to_string(nmf1_hits) + "/" + std::to_string(n) + fmt(", min nmf-2 cosine %.6f", worst_cos)};
}

Outcome determinism() {
  const fs::path dir = testsupport::scratch_dir("acceptance_determinism");
  testsupport::write_planted(dir, testsupport::planted(9001));
  RunConfig base;
  base.set("X", (dir / "X.mtx").string());
  base.set("S", (dir / "S.mtx").string());
  base.set("items", (dir / "items.txt").string());
  base.set("truth", (dir / "truth.tsv").string());
  base.set("k", "3");
  base.set("trials", "3");
  base.set("seed", "9");
  base.save((dir / "manifest.tsv").string());

  std::ostringstream log;
  for (const char* out : {"a", "b"}) {
    RunConfig cfg = RunConfig::load((dir / "manifest.tsv").string());
    cfg.set("out", (dir / out).string());
    run_command("cluster", cfg, log);
  }
  int differing = 0;
  for (const char* f : {"W.mtx", "H.mtx", "labels.tsv", "metrics.tsv"})
    differing += testsupport::read_file(dir / "a" / f) != testsupport::read_file(dir / "b" / f) ||
                 testsupport::read_file(dir / "a" / f).empty();
  return {differing == 0, std::to_string(differing) + " of 4 artifacts differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"nls matches exhaustive enumeration", nls_oracle},
      {"monotone descent of every block update", monotone_descent},
      {"planted recovery and noisy-view comparison", planted_recovery},
      {"alpha = beta = 0 reproduces nmf", degeneration},
      {"hypergraph similarity", hypergraph},
      {"metric fixtures and brute force", metrics_fixtures},
      {"roc curve and area", roc},
      {"recommendation self-retrieval", self_retrieval},
      {"manifest reruns are bit-identical", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
