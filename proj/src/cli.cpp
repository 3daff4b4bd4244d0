#include "atmine/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "atmine/attack_tree.hpp"
#include "atmine/discovery.hpp"
#include "atmine/export.hpp"
#include "atmine/genlab.hpp"
#include "atmine/log_io.hpp"
#include "atmine/process_tree.hpp"
#include "atmine/replay.hpp"
#include "atmine/translate.hpp"

namespace atmine::cli {

namespace fs = std::filesystem;

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes next to the target and renames, so readers never see a partial file.
void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out.flush()) throw IoError("cannot write '" + path.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

EventLog read_log(const LogSource& src) {
  std::string format = src.format;
  if (format == "auto") {
    const auto ext = extension(src.path);
    if (ext == ".xes") format = "xes";
    else if (ext == ".csv") format = "csv";
    else throw InputError("cannot tell the log format of '" + src.path + "'; use --format");
  }
  const std::string text = read_file(src.path);
  if (format == "xes") return parse_xes(text);
  if (format == "csv") return parse_csv(text, src.case_column, src.activity_column);
  throw InputError("unknown log format '" + format + "'");
}

void write_log(const std::string& path, const EventLog& log) {
  const auto ext = extension(path);
  if (ext == ".csv") write_file(path, write_csv(log));
  else write_file(path, write_xes(log));
}

// Maps library failures onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

std::string trim_text(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

GenConfig load_preset(const std::string& name) {
  auto config = preset(name);
  if (!config) throw InputError("unknown preset '" + name + "' (expected conf1, conf2 or conf3)");
  return *config;
}

}  // namespace

int cmd_discover(const DiscoverOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LogVariants log = to_variants(read_log(o.log));
    const ProcessTree tree = discover(log, o.noise);
    write_file(o.out, print_pt(tree) + "\n");
    out << "wrote " << o.out << "\n";
    return kOk;
  });
}

int cmd_translate(const TranslateOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProcessTree tree = parse_pt(read_file(o.pt_path));
    const AttackTree at = p2t(tree);
    write_file(o.out, at_to_text(at) + "\n");
    out << "wrote " << o.out << "\n";
    if (o.rsq) {
      write_file(*o.rsq, to_risqflan(at, fs::path(o.pt_path).stem().string()));
      out << "wrote " << *o.rsq << "\n";
    }
    if (o.dot) {
      write_file(*o.dot, to_dot(at));
      out << "wrote " << *o.dot << "\n";
    }
    return kOk;
  });
}

int cmd_pipeline(const PipelineOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LogVariants log = to_variants(read_log(o.log));
    const ProcessTree pt = discover(log, o.noise);
    const AttackTree at = p2t(pt);
    const fs::path dir(o.outdir);
    write_file(dir / "model.pt", print_pt(pt) + "\n");
    write_file(dir / "model.at", at_to_text(at) + "\n");
    write_file(dir / "model.rsq", to_risqflan(at, fs::path(o.log.path).stem().string()));
    write_file(dir / "attack.dot", to_dot(at));
    write_file(dir / "process.dot", to_dot(pt));
    Bounds bounds;
    bounds.max_loop = o.max_loop;
    const FitnessReport report = fitness(at, log, bounds);
    write_file(dir / "fitness.txt", fitness_to_text(report));
    write_file(dir / "fitness.json", fitness_to_json(report));
    out << "process tree: " << print_pt(pt) << "\n";
    out << "attack tree:  " << at_to_text(at) << "\n";
    out << "fitness: " << report.fitness() << " (" << report.replayed << "/" << report.total_traces
        << ")\n";
    // Discovery at noise 0 guarantees every trace fits; anything else is a bug.
    if (o.noise == 0.0 && !report.perfect()) return kVerificationFailure;
    return kOk;
  });
}

int cmd_replay(const ReplayOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AttackTree at = at_from_text(read_file(o.at_path));
    const LogVariants log = to_variants(read_log(o.log));
    Bounds bounds;
    bounds.max_loop = o.max_loop;
    const FitnessReport report = fitness(at, log, bounds);
    out << fitness_to_text(report);
    if (o.out) {
      write_file(*o.out + ".txt", fitness_to_text(report));
      write_file(*o.out + ".json", fitness_to_json(report));
    }
    return report.perfect() ? kOk : kVerificationFailure;
  });
}

int cmd_gen_trees(const GenTreesOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GenConfig config = load_preset(o.preset);
    config.loops_enabled = o.loops;
    if (o.loops) {
      // Keep a share for loops: scale the four operators down to 0.2 each.
      config.p_seq = config.p_xor = config.p_par = config.p_or = 0.2;
    }
    const std::size_t n = o.scale.value_or(config.n_models);
    for (std::size_t i = 0; i < n; ++i) {
      config.seed = split_seed(o.seed, i);
      std::ostringstream name;
      name << "tree_" << std::setw(4) << std::setfill('0') << i << ".pt";
      write_file(fs::path(o.outdir) / name.str(), print_pt(gen_tree(config)) + "\n");
    }
    out << "wrote " << n << " trees to " << o.outdir << "\n";
    return kOk;
  });
}

int cmd_gen_traces(const GenTracesOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProcessTree tree = parse_pt(read_file(o.pt_path));
    if (auto v = validate_pt(tree); !v.empty()) throw ValidationError(v);
    LogVariants log = sample_traces(tree, o.count, o.seed, o.max_loop);
    if (o.noise > 0.0) {
      NoiseSpec spec;
      spec.probability = o.noise;
      spec.seed = split_seed(o.seed, 1);
      spec.alphabet = log.alphabet();
      if (spec.alphabet.empty()) throw InputError("the tree has no activities to draw noise from");
      log = inject_noise(log, spec);
    }
    write_log(o.out, from_variants(log));
    out << "wrote " << o.count << " traces to " << o.out << "\n";
    return kOk;
  });
}

int cmd_semantics(const SemanticsOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::string text = o.tree;
    std::string kind = o.kind;
    if (fs::exists(o.tree)) {
      text = read_file(o.tree);
      if (kind == "auto") kind = extension(o.tree) == ".at" ? "at" : "pt";
    }
    text = trim_text(text);
    if (kind == "auto") {
      // Attack-tree text is recognised by its gate syntax.
      kind = text.find(';') != std::string::npos ? "at" : "pt";
    }
    TraceSet lang;
    if (kind == "at") lang = at_language(at_from_text(text), o.bounds);
    else if (kind == "pt") lang = pt_language(parse_pt(text), o.bounds);
    else throw InputError("unknown tree kind '" + kind + "'");
    for (const auto& t : lang.traces) out << to_string(t) << "\n";
    out << "# " << lang.size() << " traces" << (lang.truncated ? " (truncated)" : "") << "\n";
    return kOk;
  });
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GenConfig config = load_preset(o.preset);
    const std::size_t n = o.scale.value_or(config.n_models);
    const fs::path dir(o.outdir);
    fs::create_directories(dir / "trees");
    std::ostringstream csv;
    csv << "model,activities,translate_ms,traces,fitness\n";
    double total_ms = 0.0, max_ms = 0.0;
    std::size_t perfect = 0;
    for (std::size_t i = 0; i < n; ++i) {
      config.seed = split_seed(o.seed, i);
      // 1. generate, 2. sample, 3. translate and save, 4. replay.
      const ProcessTree pt = gen_tree(config);
      const LogVariants log = sample_traces(pt, o.traces, split_seed(config.seed, 1), 3);
      std::ostringstream name;
      name << "tree_" << std::setw(4) << std::setfill('0') << i;
      const auto start = std::chrono::steady_clock::now();
      const AttackTree at = p2t(pt);
      write_file(dir / "trees" / (name.str() + ".at"), at_to_text(at) + "\n");
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      write_file(dir / "trees" / (name.str() + ".rsq"), to_risqflan(at, name.str()));
      total_ms += ms;
      max_ms = std::max(max_ms, ms);
      const FitnessReport report = fitness(at, log, Bounds{});
      if (report.perfect()) ++perfect;
      csv << i << "," << pt_activity_count(pt) << "," << std::fixed << std::setprecision(3) << ms
          << "," << report.total_traces << "," << std::setprecision(6) << report.fitness() << "\n";
    }
    nlohmann::json summary = {{"preset", o.preset},
                              {"models", n},
                              {"traces_per_model", o.traces},
                              {"seed", o.seed},
                              {"avg_translate_ms", n ? total_ms / static_cast<double>(n) : 0.0},
                              {"max_translate_ms", max_ms},
                              {"models_with_fitness_1", perfect}};
    write_file(dir / "bench.csv", csv.str());
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    out << o.preset << ": " << n << " models, fitness 1.0 on " << perfect << "/" << n
        << ", translation avg " << std::fixed << std::setprecision(3)
        << summary["avg_translate_ms"].get<double>() << " ms, max " << max_ms << " ms\n";
    return perfect == n ? kOk : kVerificationFailure;
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mine attack trees from attack logs via process trees"};
  app.require_subcommand(1);

  auto add_log = [](CLI::App* sub, LogSource& src) {
    sub->add_option("--format", src.format, "log format: auto, xes or csv")
        ->check(CLI::IsMember({"auto", "xes", "csv"}));
    sub->add_option("--case-column", src.case_column, "CSV case id column");
    sub->add_option("--activity-column", src.activity_column, "CSV activity column");
  };

  DiscoverOptions discover_o;
  auto* discover_cmd = app.add_subcommand("discover", "event log -> process tree (.pt)");
  discover_cmd->add_option("log", discover_o.log.path, "XES or CSV event log")->required();
  discover_cmd->add_option("--noise", discover_o.noise, "noise threshold")->check(CLI::Range(0.0, 1.0));
  discover_cmd->add_option("--out", discover_o.out, "output .pt file")->required();
  add_log(discover_cmd, discover_o.log);

  TranslateOptions translate_o;
  auto* translate_cmd = app.add_subcommand("translate", "process tree (.pt) -> attack tree (.at)");
  translate_cmd->add_option("pt", translate_o.pt_path, "input .pt file")->required();
  translate_cmd->add_option("--out", translate_o.out, "output .at file")->required();
  translate_cmd->add_option("--rsq", translate_o.rsq, "also write a RisQFLan-style file");
  translate_cmd->add_option("--dot", translate_o.dot, "also write a DOT rendering");

  PipelineOptions pipeline_o;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "discover, translate, export and replay");
  pipeline_cmd->add_option("log", pipeline_o.log.path, "XES or CSV event log")->required();
  pipeline_cmd->add_option("--noise", pipeline_o.noise, "noise threshold")->check(CLI::Range(0.0, 1.0));
  pipeline_cmd->add_option("--max-loop", pipeline_o.max_loop, "repetition bound for replay");
  pipeline_cmd->add_option("--out", pipeline_o.outdir, "output directory")->required();
  add_log(pipeline_cmd, pipeline_o.log);

  ReplayOptions replay_o;
  auto* replay_cmd = app.add_subcommand("replay", "replay a log on an attack tree");
  replay_cmd->add_option("at", replay_o.at_path, "attack tree (.at)")->required();
  replay_cmd->add_option("log", replay_o.log.path, "XES or CSV event log")->required();
  replay_cmd->add_option("--max-loop", replay_o.max_loop, "repetition bound");
  replay_cmd->add_option("--out", replay_o.out, "report prefix (<out>.txt, <out>.json)");
  add_log(replay_cmd, replay_o.log);

  GenTreesOptions gen_trees_o;
  auto* gen_trees_cmd = app.add_subcommand("gen-trees", "generate random process trees");
  gen_trees_cmd->add_option("--preset", gen_trees_o.preset, "conf1, conf2 or conf3");
  gen_trees_cmd->add_option("--scale", gen_trees_o.scale, "number of trees (default: preset)");
  gen_trees_cmd->add_option("--seed", gen_trees_o.seed, "random seed");
  gen_trees_cmd->add_flag("--loops", gen_trees_o.loops, "also generate redo loops");
  gen_trees_cmd->add_option("--out", gen_trees_o.outdir, "output directory")->required();

  GenTracesOptions gen_traces_o;
  auto* gen_traces_cmd = app.add_subcommand("gen-traces", "sample an event log from a process tree");
  gen_traces_cmd->add_option("pt", gen_traces_o.pt_path, "input .pt file")->required();
  gen_traces_cmd->add_option("-n,--count", gen_traces_o.count, "number of traces");
  gen_traces_cmd->add_option("--seed", gen_traces_o.seed, "random seed");
  gen_traces_cmd->add_option("--max-loop", gen_traces_o.max_loop, "maximum loop repetitions");
  gen_traces_cmd->add_option("--noise", gen_traces_o.noise, "noise insertion probability")
      ->check(CLI::Range(0.0, 1.0));
  gen_traces_cmd->add_option("--out", gen_traces_o.out, "output .xes or .csv")->required();

  SemanticsOptions semantics_o;
  auto* semantics_cmd = app.add_subcommand("semantics", "print the bounded language of a small tree");
  semantics_cmd->add_option("tree", semantics_o.tree, ".pt/.at file or tree text")->required();
  semantics_cmd->add_option("--kind", semantics_o.kind, "auto, pt or at")
      ->check(CLI::IsMember({"auto", "pt", "at"}));
  semantics_cmd->add_option("--max-loop", semantics_o.bounds.max_loop, "repetition bound");
  semantics_cmd->add_option("--max-traces", semantics_o.bounds.max_traces, "trace count cap")
      ->check(CLI::PositiveNumber);
  semantics_cmd->add_option("--max-len", semantics_o.bounds.max_trace_len, "trace length cap")
      ->check(CLI::PositiveNumber);

  BenchOptions bench_o;
  auto* bench_cmd = app.add_subcommand("bench", "generate, sample, translate and replay");
  bench_cmd->add_option("--preset", bench_o.preset, "conf1, conf2 or conf3");
  bench_cmd->add_option("--scale", bench_o.scale, "number of models (default: preset)");
  bench_cmd->add_option("--traces", bench_o.traces, "traces sampled per model");
  bench_cmd->add_option("--seed", bench_o.seed, "random seed");
  bench_cmd->add_option("--out", bench_o.outdir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (*discover_cmd) return cmd_discover(discover_o, out, err);
  if (*translate_cmd) return cmd_translate(translate_o, out, err);
  if (*pipeline_cmd) return cmd_pipeline(pipeline_o, out, err);
  if (*replay_cmd) return cmd_replay(replay_o, out, err);
  if (*gen_trees_cmd) return cmd_gen_trees(gen_trees_o, out, err);
  if (*gen_traces_cmd) return cmd_gen_traces(gen_traces_o, out, err);
  if (*semantics_cmd) return cmd_semantics(semantics_o, out, err);
  if (*bench_cmd) return cmd_bench(bench_o, out, err);
  return kUsage;
}

}  // namespace atmine::cli
