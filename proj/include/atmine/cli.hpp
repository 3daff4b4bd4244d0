#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "atmine/traces.hpp"

namespace atmine::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kVerificationFailure = 3 };

/// How an event log file is read. Format "auto" picks by extension
/// (.xes, .csv).
struct LogSource {
  std::string path;
  std::string format = "auto";
  std::string case_column = "case";
  std::string activity_column = "activity";
};

struct DiscoverOptions {
  LogSource log;
  double noise = 0.0;
  std::string out;
};

struct TranslateOptions {
  std::string pt_path;
  std::string out;
  std::optional<std::string> rsq;
  std::optional<std::string> dot;
};

struct PipelineOptions {
  LogSource log;
  double noise = 0.0;
  std::size_t max_loop = 3;
  std::string outdir;
};

struct ReplayOptions {
  std::string at_path;
  LogSource log;
  std::size_t max_loop = 3;
  std::optional<std::string> out;  ///< prefix for <out>.txt and <out>.json
};

struct GenTreesOptions {
  std::string preset = "conf1";
  std::optional<std::size_t> scale;  ///< number of trees; defaults to the preset
  std::uint64_t seed = 0;
  bool loops = false;
  std::string outdir;
};

struct GenTracesOptions {
  std::string pt_path;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::size_t max_loop = 3;
  double noise = 0.0;  ///< insertion probability per gap
  std::string out;     ///< .xes or .csv
};

struct SemanticsOptions {
  std::string tree;  ///< a .pt/.at file, or tree text
  std::string kind = "auto";
  Bounds bounds{3, 10000, 64};
};

struct BenchOptions {
  std::string preset = "conf1";
  std::optional<std::size_t> scale;
  std::size_t traces = 100;
  std::uint64_t seed = 0;
  std::string outdir;
};

int cmd_discover(const DiscoverOptions& o, std::ostream& out, std::ostream& err);
int cmd_translate(const TranslateOptions& o, std::ostream& out, std::ostream& err);
int cmd_pipeline(const PipelineOptions& o, std::ostream& out, std::ostream& err);
int cmd_replay(const ReplayOptions& o, std::ostream& out, std::ostream& err);
int cmd_gen_trees(const GenTreesOptions& o, std::ostream& out, std::ostream& err);
int cmd_gen_traces(const GenTracesOptions& o, std::ostream& out, std::ostream& err);
int cmd_semantics(const SemanticsOptions& o, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace atmine::cli
