#include "cli.hpp"

#include "suites.hpp"

#include "pebble/error.hpp"
#include "pebble/http_server.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace pebble::cli {

namespace {

struct Source {
  std::string lines_file;
  std::string kind = "general_position";
  int n = 4;
  std::uint64_t seed = 1;
};

struct Output {
  std::string format = "text";
  std::string out;
};

void add_source(CLI::App& cmd, Source& src)
{
  auto* lines = cmd.add_option("--lines", src.lines_file, "JSON file with {\"lines\": [{a, b, c}, ...]}");
  auto* kind = cmd.add_option("--kind", src.kind, "general_position | parallel | grid | concurrent")
                   ->capture_default_str();
  auto* n = cmd.add_option("--n", src.n, "number of lines")->capture_default_str()->check(CLI::Range(1, 64));
  lines->excludes(kind)->excludes(n);
  cmd.add_option("--seed", src.seed, "generator and strategy seed")->capture_default_str();
}

void add_output(CLI::App& cmd, Output& o)
{
  cmd.add_option("--format", o.format, "text | json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));
  cmd.add_option("--out", o.out, "write to this file instead of stdout");
}

std::shared_ptr<const Arrangement> load(const Source& src)
{
  std::vector<Line> lines =
      src.lines_file.empty() ? generate(parse_family(src.kind), src.n, src.seed) : read_lines_file(src.lines_file);
  return std::make_shared<const Arrangement>(Arrangement::build(std::move(lines)));
}

std::string describe(const Source& src)
{
  if (!src.lines_file.empty())
    return src.lines_file;
  return src.kind + " n=" + std::to_string(src.n) + " seed=" + std::to_string(src.seed);
}

/// optimal | deficit1 | total:deficit1 | total:N | file:PATH | comma-separated counts
Distribution pebbles_from(std::string_view spec, const Arrangement& arr, std::uint64_t seed)
{
  Distribution p;
  if (spec == "optimal") {
    p = autopilot_distribution(arr, Orientation::optimal(arr));
  } else if (spec == "deficit1" || spec == "total:deficit1") {
    p = one_short_distribution(arr);
  } else if (spec.starts_with("total:")) {
    std::int64_t total = 0;
    try {
      std::size_t used = 0;
      total = std::stoll(std::string(spec.substr(6)), &used);
      if (used != spec.size() - 6)
        throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError("--pebbles: cannot read a total from '" + std::string(spec) + "'");
    }
    p = random_distribution(arr.num_cells(), total, seed);
  } else if (spec.starts_with("file:")) {
    p = read_distribution_file(std::string(spec.substr(5)));
  } else {
    std::stringstream in{std::string(spec)};
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        p.push_back(std::stoll(item, &used));
        if (used != item.size())
          throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InputError("--pebbles: '" + std::string(spec) +
                         "' is not optimal, deficit1, total:N, file:PATH or a comma-separated list");
      }
    }
  }
  if (p.size() != arr.num_cells())
    throw InputError("--pebbles: expected " + std::to_string(arr.num_cells()) + " counts, got " +
                     std::to_string(p.size()));
  return p;
}

std::string side_name(Side s)
{
  return std::string(to_string(s));
}

std::string equation(const Line& l)
{
  std::ostringstream out;
  out << l.a().str() << "x " << (l.b() < 0 ? "- " : "+ ") << Integer(abs(l.b())).str() << "y " << (l.c() < 0 ? "- " : "+ ")
      << Integer(abs(l.c())).str() << " = 0";
  return out.str();
}

class Sink {
public:
  Sink(const Output& o, std::ostream& fallback) : target_(&fallback)
  {
    if (!o.out.empty()) {
      file_.open(o.out);
      if (!file_)
        throw InputError("cannot write " + o.out);
      target_ = &file_;
    }
  }
  std::ostream& operator*() { return *target_; }

private:
  std::ofstream file_;
  std::ostream* target_;
};

int cmd_gen(const Source& src, const std::string& out_path, std::ostream& out)
{
  const auto lines = generate(parse_family(src.kind), src.n, src.seed);
  Arrangement::build(lines);
  Output o;
  o.out = out_path;
  Sink sink(o, out);
  *sink << lines_to_json(lines).dump(2) << '\n';
  return ok;
}

int cmd_analyze(const Source& src, const Output& o, bool polygons, std::ostream& out)
{
  const auto arr = load(src);
  Sink sink(o, out);
  if (o.format == "json") {
    *sink << analysis_to_json(*arr, polygons).dump(2) << '\n';
    return ok;
  }
  auto& s = *sink;
  s << "arrangement: " << describe(src) << "\n";
  s << "lines: " << arr->num_lines() << "  cells: " << arr->num_cells() << "  f(L): " << arr->f_value() << "\n";
  s << "line  rank  smaller  plus  minus  equation\n";
  for (LineId l = 0; l < arr->num_lines(); ++l) {
    const auto& info = arr->line_info(l);
    s << std::setw(4) << l + 1 << std::setw(6) << info.rank << std::setw(9) << side_name(info.smaller_side)
      << std::setw(6) << info.count(Side::Plus) << std::setw(7) << info.count(Side::Minus) << "  "
      << equation(info.line) << "\n";
  }
  s << "cell  signs  witness\n";
  for (const Cell& c : arr->cells())
    s << std::setw(4) << "b" + std::to_string(c.id + 1) << "  " << arr->sign_string(c.id) << "  ("
      << to_string(c.witness.x) << ", " << to_string(c.witness.y) << ")\n";
  return ok;
}

struct SimulateArgs {
  std::string alice = "autopilot";
  std::string bob = "monovariant";
  std::string pebbles = "optimal";
  std::int64_t max_rounds = default_max_rounds;
  std::string transcript;
};

int cmd_simulate(const Source& src, const SimulateArgs& a, const Output& o, std::ostream& out)
{
  const auto arr = load(src);
  const Distribution initial = pebbles_from(a.pebbles, *arr, src.seed);
  auto alice = make_alice(a.alice, *arr, src.seed);
  auto bob = make_bob(a.bob, *arr, initial, src.seed);
  GameState state(arr, initial);
  state.set_recording(!a.transcript.empty() || o.format == "json");
  const Outcome result = play(state, *alice, *bob, a.max_rounds);

  if (!a.transcript.empty()) {
    std::ofstream t(a.transcript);
    if (!t)
      throw InputError("cannot write " + a.transcript);
    t << state.transcript().to_jsonl();
  }
  Sink sink(o, out);
  const bool won = result.status == Status::BobWon;
  if (o.format == "json") {
    Json records = Json::array();
    for (const auto& r : state.transcript().records)
      records.push_back(Json::parse(Transcript{{}, {r}}.to_jsonl()));
    *sink << Json{{"arrangement", describe(src)},
                  {"R", arr->num_cells()},
                  {"f_value", arr->f_value()},
                  {"alice", alice->name()},
                  {"bob", bob->name()},
                  {"initial", initial},
                  {"total", total(initial)},
                  {"status", status_to_json(state)},
                  {"final", state.pebbles()},
                  {"hash", hash_hex(state.hash())},
                  {"transcript", std::move(records)},
                  {"bob_diagnostics", bob_diagnostics(*bob, state)}}
                 .dump(2)
          << '\n';
    return ok;
  }
  auto& s = *sink;
  s << "arrangement: " << describe(src) << "  R=" << arr->num_cells() << "  f(L)=" << arr->f_value() << "\n";
  s << "alice: " << alice->name() << "  bob: " << bob->name() << "  pebbles: " << total(initial) << "\n";
  s << "initial: " << Json(initial).dump() << "\n";
  if (won)
    s << "result: BobWon at round " << result.rounds << ", box b" << *result.empty_box + 1 << " empty\n";
  else
    s << "result: Ongoing after " << result.rounds << " rounds (cap " << a.max_rounds << ")\n";
  s << "final: " << Json(state.pebbles()).dump() << "\n";
  s << "hash: " << hash_hex(state.hash()) << "\n";
  return ok;
}

struct OracleArgs {
  std::string pebbles = "optimal";
  int depth = 12;
  std::int64_t budget = default_node_budget;
  bool certify = false;
  std::vector<int> schedule{5, 10, 20, 40};
};

int cmd_oracle(const Source& src, const OracleArgs& a, const Output& o, std::ostream& out)
{
  const auto arr = load(src);
  Sink sink(o, out);
  if (a.certify) {
    const Certification c = certify_f(*arr, a.schedule, a.budget);
    if (o.format == "json") {
      *sink << certification_to_json(c).dump(2) << '\n';
    } else {
      *sink << "arrangement: " << describe(src) << "  R=" << arr->num_cells() << "\n"
            << "f(L): " << c.f << "\n"
            << "certified: " << (c.certified ? "yes" : "no") << "\n"
            << "depth needed: " << c.depth_needed << "\n"
            << "distributions checked: " << c.distributions_checked << "\n"
            << "nodes: " << c.nodes << "\n";
      if (!c.detail.empty())
        *sink << "detail: " << c.detail << "\n";
    }
    return c.certified ? ok : verification_failed;
  }
  const Distribution p = pebbles_from(a.pebbles, *arr, src.seed);
  const SearchResult r = exhaustive_bob_wins(*arr, p, a.depth, a.budget);
  if (o.format == "json") {
    Json j = search_result_to_json(r);
    j["pebbles"] = p;
    *sink << j.dump(2) << '\n';
    return ok;
  }
  auto& s = *sink;
  s << "arrangement: " << describe(src) << "  R=" << arr->num_cells() << "  f(L)=" << arr->f_value() << "\n";
  s << "pebbles: " << Json(p).dump() << " (total " << total(p) << ")\n";
  s << "verdict: "
    << (r.verdict == Verdict::BobForcesWin ? "Bob forces an empty box" : "no forced win") << " within " << r.depth
    << " rounds\n";
  if (!r.principal_variation.empty()) {
    s << "line:";
    for (const Move& m : r.principal_variation)
      s << " " << m.line + 1 << (m.removal_side == Side::Plus ? "+" : "-");
    s << "\n";
  }
  s << "nodes: " << r.nodes << "\n";
  return ok;
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  std::uint16_t port = 8080;
  int ttl = 3600;
  std::string transcripts;
  std::uint64_t seed = 0;
};

int cmd_serve(const ServeArgs& a, std::ostream& out)
{
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ServiceConfig cfg;
  cfg.ttl = std::chrono::seconds(a.ttl);
  cfg.seed = a.seed;
  if (!a.transcripts.empty())
    cfg.transcript_dir = a.transcripts;
  GameService service(cfg);
  HttpServer server(service, a.host, a.port);
  const auto port = server.start();
  out << "listening on http://" << a.host << ":" << port << std::endl;

  std::atomic<bool> done{false};
  std::thread janitor([&] {
    for (int tick = 1; !done; ++tick) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
      if (tick % 50 == 0)
        service.evict_idle();
    }
  });

  int sig = 0;
  sigwait(&signals, &sig);
  out << "stopping" << std::endl;
  server.stop();
  done = true;
  janitor.join();
  return ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Exact engine for the pebble game on line arrangements", "pebbles"};
  app.require_subcommand(1);

  Source src;
  Output o;

  auto* gen = app.add_subcommand("gen", "generate an arrangement and print its lines");
  std::string gen_out;
  gen->add_option("--kind", src.kind, "general_position | parallel | grid | concurrent")->capture_default_str();
  gen->add_option("--n", src.n, "number of lines")->required()->check(CLI::Range(1, 64));
  gen->add_option("--seed", src.seed)->capture_default_str();
  gen->add_option("--out", gen_out, "write to this file instead of stdout");

  auto* analyze = app.add_subcommand("analyze", "cells, ranks, smaller sides and f(L)");
  bool polygons = false;
  add_source(*analyze, src);
  add_output(*analyze, o);
  analyze->add_flag("--polygons", polygons, "include clipped display polygons (json only)");

  auto* simulate = app.add_subcommand("simulate", "play one game between two strategies");
  SimulateArgs sim;
  add_source(*simulate, src);
  add_output(*simulate, o);
  simulate->add_option("--alice", sim.alice, "autopilot | random | greedy")->capture_default_str();
  simulate->add_option("--bob", sim.bob, "monovariant | smallpair | random")->capture_default_str();
  simulate->add_option("--pebbles", sim.pebbles, "optimal | total:deficit1 | total:N | file:PATH | c1,c2,...")
      ->capture_default_str();
  simulate->add_option("--max-rounds", sim.max_rounds)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--transcript", sim.transcript, "write the transcript as JSON lines");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  SuiteOptions so;
  int n_max = 0, seeds = 0, depth = 0;
  std::vector<std::string> names(suite_names().begin(), suite_names().end());
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(names));
  auto* n_max_opt = verify->add_option("--n-max", n_max, "largest n")->check(CLI::PositiveNumber);
  auto* seeds_opt = verify->add_option("--seeds", seeds, "number of seeds")->check(CLI::PositiveNumber);
  verify->add_option("--seed", so.seed, "first seed")->capture_default_str();
  auto* depth_opt = verify->add_option("--depth", depth, "search or enumeration depth")->check(CLI::PositiveNumber);
  verify->add_option("--sequences", so.sequences, "random sequences per case (lemma1)")->capture_default_str();
  verify->add_option("--length", so.length, "random sequence length (lemma1)")->capture_default_str();
  verify->add_option("--distributions", so.distributions, "distributions per arrangement (claim6)")
      ->capture_default_str();
  verify->add_option("--max-rounds", so.max_rounds)->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--jobs", so.jobs, "worker threads, 0 for all cores")->capture_default_str();
  add_output(*verify, o);

  auto* oracle = app.add_subcommand("oracle", "exhaustive search for forced Bob wins");
  OracleArgs orc;
  add_source(*oracle, src);
  add_output(*oracle, o);
  oracle->add_option("--pebbles", orc.pebbles)->capture_default_str();
  oracle->add_option("--depth", orc.depth)->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--budget", orc.budget, "node budget")->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_flag("--certify", orc.certify, "certify f(L) over every distribution with f(L) - 1 pebbles");
  oracle->add_option("--schedule", orc.schedule, "depths tried in order when certifying")
      ->delimiter(',')
      ->capture_default_str();

  auto* serve = app.add_subcommand("serve", "run the HTTP and WebSocket game service");
  ServeArgs sv;
  serve->add_option("--host", sv.host)->capture_default_str();
  serve->add_option("--port", sv.port)->capture_default_str();
  serve->add_option("--ttl", sv.ttl, "idle session lifetime in seconds")->capture_default_str();
  serve->add_option("--transcripts", sv.transcripts, "directory for per-session transcripts");
  serve->add_option("--seed", sv.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*gen)
      return cmd_gen(src, gen_out, out);
    if (*analyze)
      return cmd_analyze(src, o, polygons, out);
    if (*simulate)
      return cmd_simulate(src, sim, o, out);
    if (*oracle)
      return cmd_oracle(src, orc, o, out);
    if (*serve)
      return cmd_serve(sv, out);
    if (*n_max_opt)
      so.n_max = n_max;
    if (*seeds_opt)
      so.seeds = seeds;
    if (*depth_opt)
      so.depth = depth;
    const SuiteReport report = run_suite(suite, so);
    Sink sink(o, out);
    if (o.format == "json")
      *sink << report.to_json().dump(2) << '\n';
    else
      *sink << report.to_text();
    return report.passed() ? ok : verification_failed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const StrategyError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const BudgetExceeded& e) {
    err << "inconclusive: " << e.what() << "\n";
    return verification_failed;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return verification_failed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
}

} // namespace pebble::cli
