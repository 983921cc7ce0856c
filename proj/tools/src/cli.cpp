#include "aimforge_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "aimforge/agents.hpp"
#include "aimforge/backend.hpp"
#include "aimforge/config.hpp"
#include "aimforge/error.hpp"
#include "aimforge/latex_report.hpp"
#include "aimforge/orchestrator.hpp"
#include "aimforge/prompts.hpp"
#include "aimforge/prv_sim.hpp"
#include "aimforge/remote_backend.hpp"
#include "aimforge/trajectory_io.hpp"
#include "aimforge/transcribe.hpp"

namespace aimforge::cli {
namespace {

namespace fs = std::filesystem;

struct Failure {
  int status;
  std::string code;
  std::string message;
};

Failure input_failure(const Error& err) { return {kExitInput, std::string(to_string(err.code())), err.what()}; }

Failure runtime_failure(const Error& err) {
  switch (err.code()) {
    case ErrorCode::io_failure:
    case ErrorCode::malformed_input:
    case ErrorCode::malformed_record:
      return input_failure(err);
    default:
      return {kExitBackend, std::string(to_string(err.code())), err.what()};
  }
}

void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.flush();
  if (!file) throw Error(ErrorCode::io_failure, "cannot write " + path.string());
}

std::string read_input(const std::string& path) {
  if (path != "-") return read_file(path);
  std::ostringstream buffer;
  buffer << std::cin.rdbuf();
  return buffer.str();
}

struct Inputs {
  ProblemContext problem;
  RunConfig config;
  PromptTemplates templates = PromptTemplates::defaults();
  std::unique_ptr<Backend> backend;
};

RunConfig load_config(const std::optional<std::string>& config_path) {
  if (!config_path) return RunConfig{};
  RunConfig config = load_run_config(*config_path);
  if (config.template_dir && config.template_dir->is_relative()) {
    config.template_dir = fs::path(*config_path).parent_path() / *config.template_dir;
  }
  try {
    config.validate();
  } catch (const Error& err) {
    throw Error(ErrorCode::malformed_input, *config_path + ": " + err.what());
  }
  return config;
}

std::unique_ptr<Backend> make_backend(const RunConfig& config,
                                      const std::optional<std::string>& script_path) {
  if (script_path) return std::make_unique<ScriptedBackend>(load_script(*script_path));
  return RemoteBackend::from_environment(config.remote);
}

// ---- run -----------------------------------------------------------------

struct RunArgs {
  std::string problem;
  std::optional<std::string> config;
  std::string out_dir;
  std::optional<std::string> script;
};

std::optional<Failure> cmd_run(const RunArgs& args, std::ostream& out) {
  Inputs inputs;
  try {
    inputs.problem = load_problem(args.problem);
    inputs.config = load_config(args.config);
    if (inputs.config.template_dir) inputs.templates = PromptTemplates::load(*inputs.config.template_dir);
    inputs.backend = make_backend(inputs.config, args.script);
  } catch (const Error& err) {
    return input_failure(err);
  }

  const fs::path out_dir(args.out_dir);
  const fs::path trajectory_path = out_dir / (std::string("trajectory") + std::string(kTrajectoryExtension));
  std::optional<TrajectoryWriter> writer;
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::io_failure, "cannot create " + out_dir.string() + ": " + ec.message());
    fs::remove(trajectory_path, ec);
    writer.emplace(trajectory_path);
  } catch (const Error& err) {
    return input_failure(err);
  }

  try {
    Orchestrator orchestrator(*inputs.backend, inputs.problem, inputs.config, inputs.templates);
    orchestrator.set_sink([&](const TrajectoryEntry& entry) { writer->append(entry); });
    const RunResult result = orchestrator.run();
    std::string stats = format_stats(result.stats);
    stats += "stop_reason=" + std::string(to_string(result.stop_reason)) + "\n";
    stats += "iterations=" + std::to_string(result.iterations) + "\n";
    write_text_file(out_dir / "stats", stats);
    out << stats;
  } catch (const Error& err) {
    return runtime_failure(err);
  }
  return std::nullopt;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  sim::ReviewerModel model{0.5, 0.0, 0.0};
  std::size_t k = 3;
  std::size_t cap = 3;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  unsigned workers = 0;
};

std::optional<Failure> cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  try {
    const sim::SimResult result = sim::simulate_run(args.model, args.k, args.cap, args.trials, args.seed, args.workers);
    out << sim::csv_header() << '\n' << sim::csv_row(args.model, args.k, args.cap, result) << '\n';
  } catch (const Error& err) {
    return Failure{kExitUsage, std::string(to_string(err.code())), err.what()};
  }
  return std::nullopt;
}

// ---- report --------------------------------------------------------------

struct ReportArgs {
  std::string trajectory;
  std::string out_file;
  bool transcribe = false;
};

std::optional<Failure> cmd_report(const ReportArgs& args, std::ostream& err_stream) {
  try {
    const ReadResult read = read_trajectory_file(args.trajectory);
    for (const std::string& warning : read.warnings) {
      err_stream << "aimforge: warning: " << args.trajectory << ": " << warning << '\n';
    }
    ReportOptions options;
    options.transcribe_unicode = args.transcribe;
    write_text_file(args.out_file, emit_latex_report(read.entries, options));
  } catch (const Error& err) {
    return input_failure(err);
  }
  return std::nullopt;
}

// ---- transcribe ----------------------------------------------------------

struct TranscribeArgs {
  std::string input;
  std::optional<std::string> table;
  bool model = false;
  std::optional<std::string> config;
  std::optional<std::string> script;
};

std::optional<Failure> cmd_transcribe(const TranscribeArgs& args, std::ostream& out) {
  std::string text;
  std::optional<SymbolTable> table;
  RunConfig config;
  std::unique_ptr<Backend> backend;
  try {
    text = read_input(args.input);
    if (args.table) table = SymbolTable::load(*args.table);
    if (args.model) {
      config = load_config(args.config);
      backend = make_backend(config, args.script);
    }
  } catch (const Error& err) {
    return input_failure(err);
  }

  if (!args.model) {
    out << unicode_math_to_latex(text, table ? *table : SymbolTable::defaults());
    return std::nullopt;
  }
  try {
    const PromptTemplates templates =
        config.template_dir ? PromptTemplates::load(*config.template_dir) : PromptTemplates::defaults();
    out << transcribe_with_model(*backend, PromptBuilder(config, templates), text);
  } catch (const Error& err) {
    return runtime_failure(err);
  }
  return std::nullopt;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"aimforge: explorer / verifier / refiner orchestration for research mathematics", "aimforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "aimforge 0.1.0");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run the workflow on a problem file");
  run->add_option("problem", run_args.problem, "Problem file (TOML)")->required();
  run->add_option("--config", run_args.config, "Run configuration (TOML)");
  run->add_option("--out", run_args.out_dir, "Output directory")->required();
  run->add_option("--scripted", run_args.script, "Replay model calls from a script file (JSON)");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of PRV acceptance rates");
  simulate->add_option("--q", sim_args.model.q, "Per-review rejection probability for a flawed proof")
      ->capture_default_str();
  simulate->add_option("--p", sim_args.model.p, "Per-review false rejection probability for a correct proof")
      ->capture_default_str();
  simulate->add_option("--r", sim_args.model.r, "Probability that a refinement repairs a flawed proof")
      ->capture_default_str();
  simulate->add_option("--k", sim_args.k, "Reviews per round")->capture_default_str();
  simulate->add_option("--cap", sim_args.cap, "Refine cap R")->capture_default_str();
  simulate->add_option("--trials", sim_args.trials, "Trials")->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "Seed")->capture_default_str();
  simulate->add_option("--workers", sim_args.workers, "Worker threads (0 = hardware)")->capture_default_str();

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand("report", "Render a trajectory as a LaTeX document");
  report->add_option("trajectory", report_args.trajectory, "Trajectory file")->required();
  report->add_option("--out", report_args.out_file, "Output .tex file")->required();
  report->add_flag("--transcribe", report_args.transcribe, "Transcribe Unicode math to LaTeX");

  TranscribeArgs transcribe_args;
  CLI::App* transcribe = app.add_subcommand("transcribe", "Unicode math to LaTeX on standard output");
  transcribe->add_option("file", transcribe_args.input, "Input text file, or - for standard input")->required();
  transcribe->add_option("--table", transcribe_args.table, "Symbol table overriding the built-in one");
  transcribe->add_flag("--model", transcribe_args.model, "Ask the transcriber model instead of the table");
  transcribe->add_option("--config", transcribe_args.config, "Run configuration (with --model)");
  transcribe->add_option("--scripted", transcribe_args.script, "Replay script (with --model)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "aimforge 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "aimforge: error[usage]: " << message << '\n';
    return kExitUsage;
  }

  std::optional<Failure> failure;
  if (run->parsed()) {
    failure = cmd_run(run_args, out);
  } else if (simulate->parsed()) {
    failure = cmd_simulate(sim_args, out);
  } else if (report->parsed()) {
    failure = cmd_report(report_args, err);
  } else if (transcribe->parsed()) {
    failure = cmd_transcribe(transcribe_args, out);
  }
  if (!failure) return kExitOk;

  std::string message = failure->message;
  std::replace(message.begin(), message.end(), '\n', ' ');
  err << "aimforge: error[" << failure->code << "]: " << message << '\n';
  return failure->status;
}

}  // namespace aimforge::cli
