// cea: batch runner and live-play server.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cea/data.hpp"
#include "cea/error.hpp"
#include "cea/log_check.hpp"
#include "cea/service.hpp"
#include "cea/trace.hpp"

namespace fs = std::filesystem;
using namespace cea;

namespace {

struct RunOptions {
  std::string personality = "0,0,0";
  std::string speaking = "on";
  uint64_t seed = 1;
  int sessions = 1;
  std::string profile = "reactive";
  std::string out;
  bool sweep = false;
  bool validate = false;
  std::string data;
  std::string memory;
  std::string llm_endpoint;
  double threshold = 0.3;
  double initial = 1.0;
  double decay = 0.1;
  double recovery_gain = 0.5;
  int horizon = 40;
  double failure = 0.0;
  bool verbose = false;
};

std::string label(const PersonalityVector& p) {
  std::string s;
  for (TraitPole pole : dominant_poles(p)) s += (s.empty() ? "" : "-") + to_string(pole);
  return s.empty() ? "neutral" : s;
}

std::vector<bool> conditions(const std::string& speaking) {
  if (speaking == "on") return {true};
  if (speaking == "off") return {false};
  return {true, false};
}

std::string events_of(const SessionConfig& config) {
  Session s = Session::create(config);
  return export_trace(s.run_to_completion(), TraceFormat::EventsJsonl);
}

int run(const RunOptions& o) {
  std::vector<PersonalityVector> people;
  if (o.sweep) {
    people = archetypes();
  } else {
    people.push_back(PersonalityVector::parse(o.personality));
  }
  std::unique_ptr<HttpSentenceClient> client;
  if (!o.llm_endpoint.empty()) client = std::make_unique<HttpSentenceClient>(o.llm_endpoint);

  std::optional<EpisodicMemory> memory;
  if (!o.memory.empty() && fs::exists(o.memory)) memory = EpisodicMemory::load_dump(data::read_file(o.memory));

  int failures = 0;
  int count = 0;
  std::cout << "personality      speaking  seed  steps  robot  motivates  replans  valid\n";
  for (const auto& p : people) {
    for (bool speaking : conditions(o.speaking)) {
      for (int i = 0; i < o.sessions; ++i) {
        SessionConfig config;
        config.personality = p;
        config.speaking = speaking;
        config.seed = o.seed + static_cast<uint64_t>(i);
        config.profile = o.profile;
        config.data_dir = o.data;
        config.comfort = {o.threshold, o.initial, o.decay, o.recovery_gain};
        config.planner.horizon = o.horizon;
        config.failure_probability = o.failure;
        config.memory = memory;

        Session session = Session::create(config);
        if (client) session.set_sentence_client(client.get());
        if (o.verbose) std::cout << "plan for " << p.to_string() << ":\n" << pretty_print(session.current_plan());
        const SessionLog& log = session.run_to_completion();
        if (!o.memory.empty()) {
          memory = session.memory();
          std::ofstream(o.memory) << memory->dump();
        }

        int motivates = 0;
        for (const auto& [pole, n] : log.summary.motivational_counts) motivates += n;
        std::string name = label(p);
        std::printf("%-16s %-9s %4llu  %5d  %5d  %9d  %7d  %s\n", name.c_str(), speaking ? "on" : "off",
                    static_cast<unsigned long long>(*config.seed), log.summary.steps, log.summary.robot_placements,
                    motivates, log.summary.replans, log.summary.complete_valid ? "yes" : "no");
        ++count;

        if (!o.out.empty()) {
          fs::path dir = fs::path(o.out) / (name + (speaking ? "-speaking" : "-silent") + "-seed" +
                                            std::to_string(*config.seed));
          fs::create_directories(dir);
          for (TraceFormat f : {TraceFormat::EventsJsonl, TraceFormat::ComfortCsv, TraceFormat::TrajectoryCsv,
                                TraceFormat::Summary}) {
            write_trace(log, f, (dir / std::string(file_name(f))).string());
          }
        }

        if (o.validate) {
          std::vector<std::string> problems = check_log(log, o.threshold);
          // Determinism: the same config replays to the same bytes. Skipped
          // with an external generator or carried-over memory.
          if (!client && o.memory.empty()) {
            std::string first = export_trace(log, TraceFormat::EventsJsonl);
            if (events_of(config) != first) problems.push_back("replay with the same seed differs");
          }
          for (const auto& msg : problems) std::cout << "  violation: " << msg << "\n";
          if (!problems.empty()) ++failures;
        }
      }
    }
  }
  if (o.validate) {
    std::cout << (failures == 0 ? "validate: all " : "validate: FAILED ") << (count - failures) << "/" << count
              << " sessions clean\n";
  }
  return failures == 0 ? 0 : 1;
}

SessionService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Personality-driven collaborative agent: batch sessions and live play"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  RunOptions o;
  auto* run_cmd = app.add_subcommand("run", "Simulate batch sessions");
  run_cmd->add_option("--personality", o.personality, "Weights \"c,e,a\" in [-1, 1]");
  run_cmd->add_option("--speaking", o.speaking, "Condition")->check(CLI::IsMember({"on", "off", "both"}));
  run_cmd->add_option("--seed", o.seed, "First seed");
  run_cmd->add_option("--sessions", o.sessions, "Seeds per personality and condition")->check(CLI::PositiveNumber);
  run_cmd->add_option("--profile", o.profile, "Simulated user profile");
  run_cmd->add_option("--out", o.out, "Write exports per session under this directory");
  run_cmd->add_flag("--sweep", o.sweep, "Run the twelve archetypes instead of --personality");
  run_cmd->add_flag("--validate", o.validate, "Check session invariants on every produced log");
  run_cmd->add_option("--data", o.data, "Directory with replacement data files")->check(CLI::ExistingDirectory);
  run_cmd->add_option("--memory", o.memory, "Reward table file carried across sessions");
  run_cmd->add_option("--llm-endpoint", o.llm_endpoint, "Sentence generator URL; key from CEA_LLM_KEY");
  run_cmd->add_option("--threshold", o.threshold, "Comfort threshold");
  run_cmd->add_option("--initial", o.initial, "Initial comfort");
  run_cmd->add_option("--decay", o.decay, "Decay per action at |w| = 1");
  run_cmd->add_option("--recovery-gain", o.recovery_gain, "Recovery per unit of reward");
  run_cmd->add_option("--horizon", o.horizon, "Planner step bound");
  run_cmd->add_option("--failure", o.failure, "Arm failure probability per motion")->check(CLI::Range(0.0, 1.0));
  run_cmd->add_flag("-v,--verbose", o.verbose, "Print the first plan of each session");

  std::string plan_personality = "0,0,0";
  std::string plan_speaking = "on";
  auto* plan_cmd = app.add_subcommand("plan", "Print the opening plan for a personality");
  plan_cmd->add_option("--personality", plan_personality, "Weights \"c,e,a\"");
  plan_cmd->add_option("--speaking", plan_speaking)->check(CLI::IsMember({"on", "off"}));

  ServiceOptions serve;
  std::string bind = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the live-play HTTP API");
  serve_cmd->add_option("--bind", bind, "Address to bind");
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--static", serve.static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--snapshot", serve.snapshot_dir, "Write session exports here on shutdown");
  serve_cmd->add_option("--data", serve.data_dir, "Directory with replacement data files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(o);
    if (*plan_cmd) {
      PersonalityVector p = PersonalityVector::parse(plan_personality);
      Plan result = plan(initial_state(p), ActionCatalog::defaults(), p, plan_speaking == "on");
      std::cout << pretty_print(result);
      return 0;
    }
    if (*serve_cmd) {
      SessionService service(serve);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << bind << ":" << port << std::endl;
      bool ok = service.listen(bind, port);
      g_service = nullptr;
      if (!ok) {
        std::cerr << "cannot bind " << bind << ":" << port << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
