#include "jnmf/pipeline.hpp"

#include "jnmf/graph.hpp"
#include "jnmf/io.hpp"
#include "jnmf/metrics.hpp"
#include "jnmf/mmio.hpp"
#include "jnmf/recommend.hpp"
#include "jnmf/textprep.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace jnmf {
namespace fs = std::filesystem;

TopicReport top_terms(const DenseMatrix& w, const std::vector<std::string>& vocab, Index t) {
  if (static_cast<Index>(vocab.size()) != w.rows())
    fail(ErrorCode::VocabMismatch, "vocabulary has " + std::to_string(vocab.size()) +
                                       " terms, W has " + std::to_string(w.rows()) + " rows");
  if (t < 1) fail(ErrorCode::InvalidArgument, "top-terms count must be >= 1");
  TopicReport report;
  const Index take = std::min(t, w.rows());
  std::vector<Index> order(static_cast<std::size_t>(w.rows()));
  for (Index c = 0; c < w.cols(); ++c) {
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return w(a, c) > w(b, c); });
    std::vector<std::pair<std::string, double>> terms;
    for (Index r = 0; r < take; ++r) {
      const Index i = order[static_cast<std::size_t>(r)];
      terms.emplace_back(vocab[static_cast<std::size_t>(i)], w(i, c));
    }
    report.clusters.push_back(std::move(terms));
  }
  return report;
}

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) fail(ErrorCode::InvalidArgument, "missing required parameter '" + key + "'");
  return it->second;
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

Index RunConfig::get_count(const std::string& key) const {
  const std::string& v = get(key);
  std::size_t used = 0;
  long long x = -1;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || x < 0)
    fail(ErrorCode::InvalidArgument, "parameter '" + key + "' must be a nonnegative integer, got '" + v + "'");
  return static_cast<Index>(x);
}

Index RunConfig::get_count(const std::string& key, Index fallback) const {
  return has(key) ? get_count(key) : fallback;
}

double RunConfig::get_real(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = get(key);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || std::isnan(x))
    fail(ErrorCode::InvalidArgument, "parameter '" + key + "' must be a number, got '" + v + "'");
  return x;
}

std::uint64_t RunConfig::get_seed(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = get(key);
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || v.front() == '-')
    fail(ErrorCode::InvalidArgument, "parameter '" + key + "' must be an unsigned integer");
  return x;
}

bool RunConfig::get_flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = get(key);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  fail(ErrorCode::InvalidArgument, "parameter '" + key + "' must be a boolean, got '" + v + "'");
}

std::optional<double> RunConfig::get_auto(const std::string& key) const {
  if (!has(key) || get(key) == "auto") return std::nullopt;
  return get_real(key, 0.0);
}

RunConfig RunConfig::load(const std::string& path) {
  RunConfig cfg;
  cfg.values_ = io::read_key_values(path);
  return cfg;
}

void RunConfig::save(const std::string& path) const { io::write_key_values(path, values_); }

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return 1;
    case ErrorCode::NonConvergence:
    case ErrorCode::SingularSystem:
      return 3;
    default:
      return 2;
  }
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------
namespace {

std::string out_dir(const RunConfig& cfg) {
  const std::string dir = cfg.get("out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  return f;
}

std::vector<std::string> default_ids(Index n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

std::vector<std::string> ids_or_default(const RunConfig& cfg, const std::string& key, Index n) {
  if (!cfg.has(key)) return default_ids(n);
  auto ids = io::read_lines(cfg.get(key));
  if (static_cast<Index>(ids.size()) != n)
    fail(ErrorCode::ShapeMismatch, "'" + cfg.get(key) + "' lists " + std::to_string(ids.size()) +
                                       " ids, expected " + std::to_string(n));
  return ids;
}

FactorizeOptions factorize_options(const RunConfig& cfg) {
  FactorizeOptions o;
  o.k = cfg.get_count("k");
  o.alpha = cfg.get_auto("alpha");
  o.beta = cfg.get_auto("beta");
  o.max_sweeps = cfg.get_count("max_sweeps", o.max_sweeps);
  o.rel_tol = cfg.get_real("tol", o.rel_tol);
  o.seed = cfg.get_seed("seed", o.seed);
  o.trials = cfg.get_count("trials", o.trials);
  o.beta_growth = cfg.get_real("beta_growth", o.beta_growth);
  return o;
}

void record_options(RunConfig& cfg, const FactorizeOptions& o) {
  cfg.set("k", std::to_string(o.k));
  cfg.set("max_sweeps", std::to_string(o.max_sweeps));
  cfg.set("tol", io::format_real(o.rel_tol));
  cfg.set("seed", std::to_string(o.seed));
  cfg.set("trials", std::to_string(o.trials));
  cfg.set("beta_growth", io::format_real(o.beta_growth));
  std::string seeds;
  for (Index t = 0; t < o.trials; ++t)
    seeds += (t ? "," : "") + std::to_string(o.seed + static_cast<std::uint64_t>(t));
  cfg.set("seeds_consumed", seeds);
}

Method parse_method(const std::string& m) {
  if (m == "joint") return Method::Joint;
  if (m == "nmf") return Method::Nmf;
  if (m == "symnmf") return Method::SymNmf;
  fail(ErrorCode::InvalidArgument, "unknown method '" + m + "' (joint, nmf, symnmf)");
}

void write_run_log(const std::string& path, const FactorizationResult& r) {
  auto f = open_out(path);
  for (std::size_t i = 0; i < r.objective_history.size(); ++i)
    f << i + 1 << "\t" << io::format_real(r.objective_history[i]) << "\n";
}

struct MetricRow {
  double average_f1 = 0.0;
  PairwiseScores pairwise;
};

MetricRow evaluate(const Labeling& pred, const Labeling& truth) {
  MetricRow row;
  row.average_f1 = average_f1(confusion(pred, truth));
  row.pairwise = pairwise_scores(pairwise_counts(pred, truth));
  return row;
}

void write_metric_header(std::ostream& out) {
  out << "trial\tseed\taverage_f1\tpwf1\tpwfpr\tpwfnr\n";
}

void write_metric_values(std::ostream& out, const MetricRow& m) {
  out << io::format_real(m.average_f1) << "\t" << io::format_real(m.pairwise.pwf1) << "\t"
      << io::format_real(m.pairwise.pwfpr) << "\t" << io::format_real(m.pairwise.pwfnr) << "\n";
}

// Mean over non-NaN entries; NaN if none.
double mean_defined(const std::vector<double>& v) {
  double s = 0.0;
  std::size_t c = 0;
  for (double x : v)
    if (!std::isnan(x)) {
      s += x;
      ++c;
    }
  return c ? s / static_cast<double>(c) : std::numeric_limits<double>::quiet_NaN();
}

void write_topics(const std::string& path, const TopicReport& report) {
  auto f = open_out(path);
  f << "cluster\trank\tterm\tweight\n";
  for (std::size_t c = 0; c < report.clusters.size(); ++c)
    for (std::size_t r = 0; r < report.clusters[c].size(); ++r)
      f << c << "\t" << r + 1 << "\t" << report.clusters[c][r].first << "\t"
        << io::format_real(report.clusters[c][r].second) << "\n";
}

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<Index>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (Index i : idx) out.push_back(v[static_cast<std::size_t>(i)]);
  return out;
}

void finish(RunConfig& cfg, const std::string& command, const std::string& dir) {
  cfg.set("command", command);
  cfg.save(join(dir, "manifest.tsv"));
}

}  // namespace

// ---------------------------------------------------------------------------
// preprocess
// ---------------------------------------------------------------------------

void run_preprocess(RunConfig& cfg, std::ostream& log) {
  Corpus corpus;
  corpus.vocab = io::read_lines(cfg.get("vocab"));
  corpus.doc_ids = io::read_lines(cfg.get("docs"));
  corpus.counts = mm::read_sparse(cfg.get("counts"));
  check_corpus(corpus);

  FilterOptions fo;
  fo.min_term_df = cfg.get_count("min_term_df", fo.min_term_df);
  fo.min_doc_len = cfg.get_count("min_doc_len", fo.min_doc_len);
  fo.dedupe = cfg.get_flag("dedupe", fo.dedupe);
  const bool raw_adjacency = cfg.get_flag("raw_adjacency", false);
  const bool dual = cfg.get_flag("dual", false);
  const bool has_edges = cfg.has("edges"), has_hyper = cfg.has("hyperedges");
  if (has_edges && has_hyper)
    fail(ErrorCode::InvalidArgument, "give either an edge list or a hyperedge file, not both");
  if (dual && !has_hyper) fail(ErrorCode::InvalidArgument, "--dual needs a hyperedge file");
  if (raw_adjacency && !has_edges)
    fail(ErrorCode::InvalidArgument, "--raw-adjacency applies to edge-list input only");
  const std::string dir = out_dir(cfg);

  FilterReport filt;
  Corpus kept = filter_corpus(corpus, fo, &filt);
  TfidfResult tf = tfidf(kept.counts);

  // Documents whose weights vanish entirely cannot be normalized.
  std::vector<Index> nonzero_cols;  // positions within `kept`
  std::vector<std::string> zero_docs;
  for (Index j = 0; j < tf.weights.cols(); ++j) {
    if (tf.weights.col(j).nonZeros() > 0) nonzero_cols.push_back(j);
    else zero_docs.push_back(kept.doc_ids[static_cast<std::size_t>(j)]);
  }
  if (nonzero_cols.empty()) fail(ErrorCode::EmptyCorpus, "every document has zero tf-idf weight");
  SparseMatrix x = normalize_columns(select_columns(tf.weights, nonzero_cols));
  // Original corpus index of every column of x.
  std::vector<Index> origin = pick(filt.kept_docs, nonzero_cols);

  std::vector<Index> final_cols(origin.size());  // positions within x
  std::iota(final_cols.begin(), final_cols.end(), Index{0});
  std::optional<SparseMatrix> s;
  std::vector<std::string> outside;

  if (has_edges) {
    Graph g = symmetrize(corpus.counts.cols(), io::read_edge_list(cfg.get("edges")));
    Graph sub = restrict(g, origin);
    Component c = largest_connected_component(sub);
    final_cols = c.vertices;
    Graph lcc = restrict(sub, c.vertices);
    s = raw_adjacency ? lcc.adjacency : normalized_adjacency(lcc);
  } else if (has_hyper && !dual) {
    Hypergraph hg = make_hypergraph(corpus.counts.cols(), io::read_hyperedges(cfg.get("hyperedges")));
    std::vector<Index> all_edges(static_cast<std::size_t>(hg.n_edges()));
    std::iota(all_edges.begin(), all_edges.end(), Index{0});
    Hypergraph sub = restrict(hg, origin, all_edges);
    Component c = largest_connected_component(sub);
    final_cols = c.vertices;
    s = hypergraph_similarity(restrict(sub, c.vertices, c.edges));
  } else if (dual) {
    // Documents are hyperedges; line j of the file lists the members of document j.
    auto members = io::read_hyperedges(cfg.get("hyperedges"));
    if (static_cast<Index>(members.size()) > corpus.counts.cols())
      fail(ErrorCode::ShapeMismatch, "hyperedge file has more lines than documents");
    members.resize(static_cast<std::size_t>(corpus.counts.cols()));
    Index n_vertices = 0;
    for (const auto& e : members)
      for (Index v : e) n_vertices = std::max(n_vertices, v + 1);
    if (cfg.has("n_vertices")) n_vertices = cfg.get_count("n_vertices");
    Hypergraph hg = make_hypergraph(n_vertices, members);
    std::vector<Index> all_vertices(static_cast<std::size_t>(n_vertices));
    std::iota(all_vertices.begin(), all_vertices.end(), Index{0});
    Hypergraph sub = restrict(hg, all_vertices, origin);
    Component c = largest_connected_component(sub);
    final_cols = c.edges;
    Hypergraph lcc = restrict(sub, c.vertices, c.edges);
    s = hypergraph_similarity(dual_hypergraph(lcc));
    mm::write_sparse(join(dir, "incidence.mtx"), lcc.incidence);
    std::vector<std::string> vnames;
    for (Index v : c.vertices) vnames.push_back(std::to_string(v));
    io::write_lines(join(dir, "vertices.txt"), vnames);
  }

  std::vector<bool> in_final(origin.size(), false);
  for (Index j : final_cols) in_final[static_cast<std::size_t>(j)] = true;
  for (std::size_t j = 0; j < origin.size(); ++j)
    if (!in_final[j]) outside.push_back(corpus.doc_ids[static_cast<std::size_t>(origin[j])]);

  x = select_columns(x, final_cols);
  x.makeCompressed();
  const std::vector<std::string> items =
      pick(corpus.doc_ids, pick(origin, final_cols));

  mm::write_sparse(join(dir, "X.mtx"), x);
  if (s) mm::write_sparse(join(dir, "S.mtx"), *s, true);
  io::write_lines(join(dir, "items.txt"), items);
  io::write_lines(join(dir, "terms.txt"), kept.vocab);
  {
    auto f = open_out(join(dir, "preprocess_report.tsv"));
    for (const auto& t : filt.removed_terms) f << "rare_term\t" << t << "\n";
    for (Index i : tf.vanished_terms) f << "ubiquitous_term\t" << kept.vocab[static_cast<std::size_t>(i)] << "\n";
    for (const auto& d : filt.removed_docs) f << "short_doc\t" << d << "\n";
    for (const auto& d : filt.duplicate_docs) f << "duplicate_doc\t" << d << "\n";
    for (const auto& d : zero_docs) f << "zero_weight_doc\t" << d << "\n";
    for (const auto& d : outside) f << "outside_component_doc\t" << d << "\n";
  }
  cfg.set("min_term_df", std::to_string(fo.min_term_df));
  cfg.set("min_doc_len", std::to_string(fo.min_doc_len));
  cfg.set("dedupe", fo.dedupe ? "true" : "false");
  finish(cfg, "preprocess", dir);
  log << "preprocess: " << x.rows() << " terms x " << x.cols() << " documents"
      << (s ? ", similarity " + std::to_string(s->rows()) + "x" + std::to_string(s->cols()) : std::string())
      << " -> " << dir << "\n";
}

// ---------------------------------------------------------------------------
// cluster
// ---------------------------------------------------------------------------

void run_cluster(RunConfig& cfg, std::ostream& log) {
  const Method method = parse_method(cfg.get_or("method", "joint"));
  std::optional<SparseMatrix> x, s;
  if (method != Method::SymNmf) x = mm::read_sparse(cfg.get("X"));
  if (method != Method::Nmf) s = mm::read_sparse(cfg.get("S"));
  const Index n = x ? x->cols() : s->cols();
  const std::vector<std::string> items = ids_or_default(cfg, "items", n);
  std::optional<io::LabelTable> truth_table;
  if (cfg.has("truth")) truth_table = io::read_label_table(cfg.get("truth"));
  std::optional<SparseMatrix> incidence;
  if (cfg.has("incidence")) incidence = mm::read_sparse(cfg.get("incidence"));
  std::optional<std::vector<std::string>> terms;
  if (cfg.has("terms")) terms = io::read_lines(cfg.get("terms"));

  FactorizeOptions opts = factorize_options(cfg);
  if (opts.k > n)
    fail(ErrorCode::InvalidArgument,
         "k = " + std::to_string(opts.k) + " exceeds the number of items n = " + std::to_string(n));
  const std::string dir = out_dir(cfg);
  std::vector<FactorizationResult> trials =
      run_trials(method, x ? &*x : nullptr, s ? &*s : nullptr, opts);
  const std::size_t best = best_trial(trials);
  const FactorizationResult& r = trials[best];

  if (r.W.size() > 0) mm::write_dense(join(dir, "W.mtx"), r.W);
  mm::write_dense(join(dir, "H.mtx"), r.H);
  if (r.H_tilde) mm::write_dense(join(dir, "Htilde.mtx"), *r.H_tilde);
  write_run_log(join(dir, "run.log"), r);

  const Labeling labels = hard_assign(r.H);
  {
    io::LabelTable t;
    t.items = items;
    for (int l : labels.hard_labels()) t.labels.push_back({std::to_string(l)});
    io::write_label_table(join(dir, "labels.tsv"), t);
  }

  {
    auto f = open_out(join(dir, "trials.tsv"));
    f << "trial\tseed\tsweeps\tfinal_objective\n";
    for (std::size_t t = 0; t < trials.size(); ++t)
      f << t << "\t" << trials[t].seed_used << "\t" << trials[t].sweeps_run << "\t"
        << io::format_real(trials[t].final_objective()) << "\n";
  }

  if (truth_table) {
    const Labeling truth = io::to_labeling(*truth_table, items);
    auto f = open_out(join(dir, "metrics.tsv"));
    write_metric_header(f);
    std::vector<double> f1s, pw1, pwp, pwn;
    for (std::size_t t = 0; t < trials.size(); ++t) {
      const MetricRow m = evaluate(hard_assign(trials[t].H), truth);
      f << t << "\t" << trials[t].seed_used << "\t";
      write_metric_values(f, m);
      f1s.push_back(m.average_f1);
      pw1.push_back(m.pairwise.pwf1);
      pwp.push_back(m.pairwise.pwfpr);
      pwn.push_back(m.pairwise.pwfnr);
    }
    const MetricRow best_row = evaluate(labels, truth);
    f << "best\t" << r.seed_used << "\t";
    write_metric_values(f, best_row);
    MetricRow mean;
    mean.average_f1 = mean_defined(f1s);
    mean.pairwise = {mean_defined(pw1), mean_defined(pwp), mean_defined(pwn)};
    f << "mean\t-\t";
    write_metric_values(f, mean);
    log << "cluster: average F1 (best trial) = " << best_row.average_f1
        << ", mean over " << trials.size() << " trials = " << mean.average_f1 << "\n";
  }

  if (incidence) {
    if (incidence->cols() != n)
      fail(ErrorCode::ShapeMismatch, "incidence matrix must have one column per item");
    const std::vector<std::string> vnames =
        ids_or_default(cfg, "vertices", incidence->rows());
    const std::vector<Index> counts = membership_counts(labels, Hypergraph{*incidence});
    auto f = open_out(join(dir, "memberships.tsv"));
    std::map<Index, Index> hist;
    for (std::size_t v = 0; v < counts.size(); ++v) {
      f << vnames[v] << "\t" << counts[v] << "\n";
      ++hist[counts[v]];
    }
    auto h = open_out(join(dir, "membership_histogram.tsv"));
    h << "memberships\tvertices\n";
    for (const auto& [c, num] : hist) h << c << "\t" << num << "\n";
  }

  if (terms && r.W.size() > 0)
    write_topics(join(dir, "topics.tsv"), top_terms(r.W, *terms, cfg.get_count("top_terms", 10)));

  record_options(cfg, opts);
  cfg.set("method", cfg.get_or("method", "joint"));
  if (method != Method::Nmf) {
    // Resolved before the first sweep; beta_growth is recorded separately.
    cfg.set("alpha", io::format_real(r.alpha));
    cfg.set("beta", io::format_real(opts.beta ? *opts.beta : default_beta(r.alpha, *s)));
  }
  cfg.set("best_trial", std::to_string(best));
  finish(cfg, "cluster", dir);
  log << "cluster: " << trials.size() << " trial(s), best seed " << r.seed_used << " objective "
      << r.final_objective() << " after " << r.sweeps_run << " sweeps -> " << dir << "\n";
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

void run_eval(RunConfig& cfg, std::ostream& log) {
  const bool labels_mode = cfg.has("pred") || cfg.has("truth");
  const bool roc_mode = cfg.has("scores") || cfg.has("citations");
  if (!labels_mode && !roc_mode)
    fail(ErrorCode::InvalidArgument, "eval needs --pred/--truth or --scores/--citations");
  std::ostringstream report;
  if (labels_mode) {
    auto [pred, truth] = io::align_labelings(io::read_label_table(cfg.get("pred")),
                                             io::read_label_table(cfg.get("truth")));
    if (!pred.is_hard()) fail(ErrorCode::InvalidArgument, "predicted labels must be a hard partition");
    const MetricRow m = evaluate(pred, truth);
    const PairwiseCounts pc = pairwise_counts(pred, truth);
    report << "average_f1\t" << io::format_real(m.average_f1) << "\n"
           << "pwf1\t" << io::format_real(m.pairwise.pwf1) << "\n"
           << "pwfpr\t" << io::format_real(m.pairwise.pwfpr) << "\n"
           << "pwfnr\t" << io::format_real(m.pairwise.pwfnr) << "\n"
           << "tp\t" << pc.tp << "\ntn\t" << pc.tn << "\nfp\t" << pc.fp << "\nfn\t" << pc.fn << "\n";
  }
  if (roc_mode) {
    const auto scored = io::read_scored_pairs(cfg.get("scores"));
    std::set<std::pair<std::string, std::string>> cited;
    for (auto& p : io::read_pairs(cfg.get("citations"))) cited.insert(p);
    std::vector<double> scores;
    std::vector<bool> flags;
    for (const auto& p : scored) {
      scores.push_back(p.score);
      flags.push_back(cited.count({p.a, p.b}) != 0);
    }
    const auto curve = roc_curve(scores, flags);
    if (cfg.has("roc_out")) {
      auto f = open_out(cfg.get("roc_out"));
      for (const auto& pt : curve) f << io::format_real(pt.fpr) << "\t" << io::format_real(pt.tpr) << "\n";
    }
    report << "auc\t" << io::format_real(roc_auc(curve)) << "\n";
  }
  if (cfg.has("out")) {
    auto f = open_out(cfg.get("out"));
    f << report.str();
  }
  cfg.set("command", "eval");
  log << report.str();
}

// ---------------------------------------------------------------------------
// recommend
// ---------------------------------------------------------------------------

namespace {

struct ScoreTable {
  std::string method;
  std::string scoring;
  DenseMatrix scores;  // test x train
};

void write_recommendations(const std::string& dir, const ScoreTable& t,
                           const std::vector<std::string>& test_ids,
                           const std::vector<std::string>& train_ids,
                           const std::vector<bool>& flags, double threshold,
                           std::ostream& summary) {
  const std::string tag = t.method + (t.scoring.empty() ? "" : "_" + t.scoring);
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(t.scores.size()));
  for (Index i = 0; i < t.scores.rows(); ++i)
    for (Index j = 0; j < t.scores.cols(); ++j) flat.push_back(t.scores(i, j));
  const auto curve = roc_curve(flat, flags);
  {
    auto f = open_out(join(dir, "roc_" + tag + ".tsv"));
    for (const auto& p : curve) f << io::format_real(p.fpr) << "\t" << io::format_real(p.tpr) << "\n";
  }
  {
    auto f = open_out(join(dir, "recs_" + tag + ".tsv"));
    for (Index i = 0; i < t.scores.rows(); ++i) {
      const DenseVector row = t.scores.row(i).transpose();
      for (Index j : recommend(row, threshold))
        f << test_ids[static_cast<std::size_t>(i)] << "\t" << train_ids[static_cast<std::size_t>(j)]
          << "\t" << io::format_real(row(j)) << "\n";
    }
  }
  summary << t.method << "\t" << (t.scoring.empty() ? "-" : t.scoring) << "\t"
          << io::format_real(roc_auc(curve)) << "\n";
}

// Cosine scoring of a query with zero coordinates: no training document is
// recommended, all scores 0.
DenseVector safe_score(const DenseMatrix& h_train, const DenseVector& h, Scoring scoring,
                       Index& zero_queries) {
  try {
    return score(h_train, h, scoring);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroQuery) throw;
    ++zero_queries;
    return DenseVector::Zero(h_train.cols());
  }
}

}  // namespace

void run_recommend(RunConfig& cfg, std::ostream& log) {
  const SparseMatrix x_train = mm::read_sparse(cfg.get("X_train"));
  const SparseMatrix s_train = mm::read_sparse(cfg.get("S_train"));
  const SparseMatrix x_test = mm::read_sparse(cfg.get("X_test"));
  const std::vector<std::string> train_ids = ids_or_default(cfg, "train_ids", x_train.cols());
  const std::vector<std::string> test_ids = ids_or_default(cfg, "test_ids", x_test.cols());
  const auto citations = io::read_pairs(cfg.get("citations"));
  if (x_test.cols() == 0) fail(ErrorCode::EmptyCorpus, "test set is empty");
  if (x_test.rows() != x_train.rows())
    fail(ErrorCode::ShapeMismatch, "test documents must use the training vocabulary");

  std::vector<std::string> methods;
  {
    std::istringstream ss(cfg.get_or("methods", "joint,nmf1,nmf2,shared-words"));
    for (std::string m; std::getline(ss, m, ',');)
      if (!m.empty()) methods.push_back(m);
  }
  for (const auto& m : methods)
    if (m != "joint" && m != "nmf1" && m != "nmf2" && m != "shared-words")
      fail(ErrorCode::InvalidArgument, "unknown recommendation method '" + m + "'");
  const double threshold = cfg.get_real("threshold", 0.5);
  FactorizeOptions opts = factorize_options(cfg);
  if (opts.k > x_train.cols())
    fail(ErrorCode::InvalidArgument, "k exceeds the number of training documents");

  std::unordered_map<std::string, Index> train_pos, test_pos;
  for (std::size_t j = 0; j < train_ids.size(); ++j) train_pos.emplace(train_ids[j], static_cast<Index>(j));
  for (std::size_t i = 0; i < test_ids.size(); ++i) test_pos.emplace(test_ids[i], static_cast<Index>(i));
  const Index T = x_test.cols(), N = x_train.cols();
  std::vector<bool> flags(static_cast<std::size_t>(T * N), false);
  for (const auto& [t, d] : citations) {
    auto ti = test_pos.find(t);
    auto di = train_pos.find(d);
    if (ti == test_pos.end() || di == train_pos.end())
      fail(ErrorCode::LabelMissing, "citation '" + t + "\t" + d + "' references an unknown document");
    flags[static_cast<std::size_t>(ti->second * N + di->second)] = true;
  }

  const std::string dir = out_dir(cfg);
  std::ostringstream summary;
  summary << "method\tscoring\tauc\n";
  Index zero_queries = 0;
  double resolved_alpha = std::numeric_limits<double>::quiet_NaN(), resolved_beta = resolved_alpha;
  const Scoring scorings[] = {Scoring::Inner, Scoring::Cosine};
  auto name = [](Scoring s) { return s == Scoring::Inner ? std::string("inner") : std::string("cosine"); };

  for (const auto& method : methods) {
    if (method == "shared-words") {
      ScoreTable t{method, "", DenseMatrix(T, N)};
      for (Index i = 0; i < T; ++i)
        t.scores.row(i) = baseline_shared_words(x_train, DenseVector(x_test.col(i))).transpose();
      write_recommendations(dir, t, test_ids, train_ids, flags, threshold, summary);
      continue;
    }
    if (method == "nmf2") {
      ScoreTable tabs[2] = {{method, "inner", DenseMatrix(T, N)}, {method, "cosine", DenseMatrix(T, N)}};
      for (Index i = 0; i < T; ++i) {
        const Nmf2Coordinates c = nmf2_coordinates(x_train, DenseVector(x_test.col(i)), opts);
        for (int s = 0; s < 2; ++s)
          tabs[s].scores.row(i) = safe_score(c.H, c.h, scorings[s], zero_queries).transpose();
      }
      for (const auto& t : tabs) write_recommendations(dir, t, test_ids, train_ids, flags, threshold, summary);
      continue;
    }
    RecommendationModel model;
    if (method == "joint") {
      FactorizationResult r = joint_nmf(x_train, s_train, opts);
      resolved_alpha = r.alpha;
      resolved_beta = opts.beta ? *opts.beta : default_beta(r.alpha, s_train);
      model = RecommendationModel{std::move(r.W), std::move(r.H), train_ids};
    } else {
      model = train_nmf1(x_train, opts);
    }
    const DenseMatrix coords = project_documents(model.W, x_test, opts.nls);
    for (Scoring sc : scorings) {
      ScoreTable t{method, name(sc), DenseMatrix(T, N)};
      for (Index i = 0; i < T; ++i)
        t.scores.row(i) = safe_score(model.H, coords.col(i), sc, zero_queries).transpose();
      write_recommendations(dir, t, test_ids, train_ids, flags, threshold, summary);
    }
  }
  {
    auto f = open_out(join(dir, "auc.tsv"));
    f << summary.str();
  }
  record_options(cfg, opts);
  if (!std::isnan(resolved_alpha)) {
    cfg.set("alpha", io::format_real(resolved_alpha));
    cfg.set("beta", io::format_real(resolved_beta));
  }
  cfg.set("threshold", io::format_real(threshold));
  finish(cfg, "recommend", dir);
  log << summary.str();
  if (zero_queries > 0)
    log << "recommend: " << zero_queries << " cosine queries had all-zero coordinates (scored 0)\n";
}

// ---------------------------------------------------------------------------
// hypergraph-sim, topics
// ---------------------------------------------------------------------------

void run_hypergraph_sim(RunConfig& cfg, std::ostream& log) {
  const auto members = io::read_hyperedges(cfg.get("hyperedges"));
  Index n_vertices = 0;
  for (const auto& e : members)
    for (Index v : e) n_vertices = std::max(n_vertices, v + 1);
  n_vertices = cfg.get_count("n_vertices", n_vertices);
  Hypergraph hg = make_hypergraph(n_vertices, members);
  if (cfg.get_flag("dual", false)) hg = dual_hypergraph(hg);
  const SparseMatrix s = hypergraph_similarity(hg);
  mm::write_sparse(cfg.get("out"), s, true);
  cfg.set("command", "hypergraph-sim");
  log << "hypergraph-sim: " << s.rows() << "x" << s.cols() << " similarity, " << s.nonZeros()
      << " nonzeros -> " << cfg.get("out") << "\n";
}

void run_topics(RunConfig& cfg, std::ostream& log) {
  const DenseMatrix w = mm::read_dense(cfg.get("W"));
  const auto vocab = io::read_lines(cfg.get("terms"));
  const TopicReport report = top_terms(w, vocab, cfg.get_count("top_terms", 10));
  write_topics(cfg.get("out"), report);
  cfg.set("command", "topics");
  for (std::size_t c = 0; c < report.clusters.size(); ++c) {
    log << c << ":";
    for (const auto& [term, weight] : report.clusters[c]) log << " " << term;
    log << "\n";
  }
}

void run_command(const std::string& command, RunConfig& cfg, std::ostream& log) {
  if (command == "preprocess") run_preprocess(cfg, log);
  else if (command == "cluster") run_cluster(cfg, log);
  else if (command == "eval") run_eval(cfg, log);
  else if (command == "recommend") run_recommend(cfg, log);
  else if (command == "hypergraph-sim") run_hypergraph_sim(cfg, log);
  else if (command == "topics") run_topics(cfg, log);
  else fail(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
}

}  // namespace jnmf
