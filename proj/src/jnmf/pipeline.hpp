#ifndef JNMF_PIPELINE_HPP
#define JNMF_PIPELINE_HPP

#include "jnmf/error.hpp"
#include "jnmf/factorize.hpp"
#include "jnmf/matrix.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jnmf {

struct TopicReport {
  // Per cluster: (term, weight), weights non-increasing.
  std::vector<std::vector<std::pair<std::string, double>>> clusters;
};

// The t strongest terms of every column of W; ties go to the lower term index.
TopicReport top_terms(const DenseMatrix& w, const std::vector<std::string>& vocab, Index t);

// Flat key/value parameter record for one command. It is also the run
// manifest: commands write resolved values (defaulted alpha and beta, seeds)
// back into it, and loading a manifest replays the run.
class RunConfig {
 public:
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void erase(const std::string& key) { values_.erase(key); }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Missing keys and malformed values throw InvalidArgument.
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  Index get_count(const std::string& key, Index fallback) const;
  Index get_count(const std::string& key) const;
  double get_real(const std::string& key, double fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_flag(const std::string& key, bool fallback) const;
  // "auto" (or absent) -> nullopt.
  std::optional<double> get_auto(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<std::string, std::string> values_;
};

// Process exit status for an error: 1 usage, 2 data, 3 numerical.
int exit_code(ErrorCode code) noexcept;

// Commands read inputs named in cfg, write outputs under cfg["out"], and
// leave the resolved manifest in cfg. Progress lines go to log.
void run_preprocess(RunConfig& cfg, std::ostream& log);
void run_cluster(RunConfig& cfg, std::ostream& log);
void run_eval(RunConfig& cfg, std::ostream& log);
void run_recommend(RunConfig& cfg, std::ostream& log);
void run_hypergraph_sim(RunConfig& cfg, std::ostream& log);
void run_topics(RunConfig& cfg, std::ostream& log);

// Dispatches on `command` (preprocess, cluster, eval, recommend,
// hypergraph-sim, topics) and records it in cfg["command"].
void run_command(const std::string& command, RunConfig& cfg, std::ostream& log);

}  // namespace jnmf

#endif  // JNMF_PIPELINE_HPP
