#include "suites.hpp"

#include "pebble/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace pebble::cli {

namespace {

constexpr Family all_families[] = {Family::GeneralPosition, Family::Parallel, Family::Grid, Family::Concurrent};

std::string pad(long long v, int width)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*lld", width, v);
  return buf;
}

std::string case_key(Family f, int n, std::optional<std::uint64_t> seed = std::nullopt)
{
  std::string k = std::string(to_string(f)) + "/n=" + pad(n, 2);
  if (seed)
    k += "/seed=" + pad(static_cast<long long>(*seed), 3);
  return k;
}

std::shared_ptr<const Arrangement> make(Family f, int n, std::uint64_t seed)
{
  return std::make_shared<const Arrangement>(Arrangement::build(generate(f, n, seed)));
}

std::int64_t closed_form_1d(int n)
{
  return n % 2 == 0 ? n * (n + 4) / 4 : (n + 1) * (n + 3) / 4 - 1;
}

// Case split for the fan-out: (family, n) pairs, families outermost.
std::vector<std::pair<Family, int>> family_grid(std::span<const Family> families, int n_min, int n_max)
{
  std::vector<std::pair<Family, int>> out;
  for (Family f : families)
    for (int n = n_min; n <= n_max; ++n)
      out.emplace_back(f, n);
  return out;
}

SuiteReport theorem1_1d(const SuiteOptions& o)
{
  const int n_max = o.n_max.value_or(12);
  SuiteReport r{"theorem1-1d", "f(L) of n-1 parallel lines equals the closed form for n boxes in a row", {}, {}};
  r.cases = run_cases(n_max >= 2 ? n_max - 1 : 0, o.jobs, [&](std::size_t i) {
    const int n = static_cast<int>(i) + 2;
    const auto arr = Arrangement::build(generate(Family::Parallel, n - 1, o.seed));
    const std::int64_t f = arr.f_value();
    CaseResult c{"boxes=" + pad(n, 2), true, {}};
    c.data = {{"n", n}, {"R", arr.num_cells()}, {"f_value", f}, {"f_1d", f_1d(n)}, {"closed_form", closed_form_1d(n)}};
    c.passed = f == f_1d(n) && f == closed_form_1d(n) && arr.num_cells() == static_cast<std::size_t>(n);
    return c;
  });
  r.summary = {{"n_range", {2, n_max}}};
  return r;
}

SuiteReport fig_n5(const SuiteOptions& o)
{
  const int seeds = o.seeds.value_or(20);
  SuiteReport r{"fig-n5", "every general-position arrangement of 5 lines has R = 16 and 46 <= f(L) <= 49", {}, {}};
  r.cases = run_cases(static_cast<std::size_t>(seeds), o.jobs, [&](std::size_t i) {
    const std::uint64_t seed = o.seed + i;
    const auto arr = Arrangement::build(generate(Family::GeneralPosition, 5, seed));
    const auto f = arr.f_value();
    CaseResult c{case_key(Family::GeneralPosition, 5, seed), true, {}};
    c.data = {{"R", arr.num_cells()}, {"f_value", f}};
    c.passed = arr.num_cells() == 16 && f >= 46 && f <= 49;
    return c;
  });
  std::int64_t lo = 0, hi = 0;
  std::map<std::int64_t, int> histogram;
  for (const auto& c : r.cases) {
    const auto f = c.data["f_value"].get<std::int64_t>();
    lo = histogram.empty() ? f : std::min(lo, f);
    hi = histogram.empty() ? f : std::max(hi, f);
    ++histogram[f];
  }
  Json hist = Json::object();
  for (auto [f, k] : histogram)
    hist[std::to_string(f)] = k;
  r.summary = {{"min_f", lo}, {"max_f", hi}, {"histogram", hist},
               {"endpoints_realized", histogram.count(46) > 0 && histogram.count(49) > 0}};
  return r;
}

struct Lemma1Counter {
  std::int64_t moves = 0;
  std::int64_t sequences = 0;
  std::int64_t violations = 0;
  std::string first;
};

void lemma1_dfs(const GameState& state, const AutopilotAlice& alice, int depth, Lemma1Counter& out)
{
  if (depth == 0) {
    ++out.sequences;
    return;
  }
  const auto& arr = state.arrangement();
  for (LineId l = 0; l < arr.num_lines(); ++l) {
    GameState next = state;
    AutopilotAlice a = alice;
    const Move m{l, a.respond(next, l)};
    next.apply(m);
    ++out.moves;
    const auto res = autopilot_residual(arr, a.orientation(), next.pebbles());
    const bool ok = next.ongoing() && std::all_of(res.begin(), res.end(), [](auto x) { return x == 0; });
    if (!ok) {
      if (out.violations++ == 0)
        out.first = "round " + std::to_string(next.round());
      ++out.sequences;
      continue;
    }
    lemma1_dfs(next, a, depth - 1, out);
  }
}

SuiteReport lemma1(const SuiteOptions& o)
{
  const int n_max = o.n_max.value_or(6);
  const int depth = o.depth.value_or(10);
  SuiteReport r{"lemma1",
                "from its own distribution, autopilot Alice keeps p(b) = |tau(b)| + 1 after every reply and no box "
                "ever empties",
                {},
                {}};
  const auto grid = family_grid(all_families, 1, n_max);
  const std::size_t exhaustive = std::count_if(grid.begin(), grid.end(), [](auto& g) { return g.second <= 2; });
  std::vector<std::pair<std::pair<Family, int>, bool>> jobs;
  for (auto g : grid)
    if (g.second <= 2)
      jobs.push_back({g, true});
  for (auto g : grid)
    jobs.push_back({g, false});
  r.cases = run_cases(jobs.size(), o.jobs, [&](std::size_t i) {
    const auto [fn, full] = jobs[i];
    const auto [family, n] = fn;
    const auto arr = make(family, n, o.seed);
    const auto sigma = Orientation::optimal(*arr);
    CaseResult c{(full ? "exhaustive/" : "random/") + case_key(family, n), true, {}};
    Lemma1Counter count;
    if (full) {
      GameState state(arr, autopilot_distribution(*arr, sigma));
      lemma1_dfs(state, AutopilotAlice(sigma), depth, count);
      c.data["depth"] = depth;
    } else {
      std::mt19937_64 rng(o.seed * 1000003 + static_cast<std::uint64_t>(i));
      for (int s = 0; s < o.sequences; ++s) {
        GameState state(arr, autopilot_distribution(*arr, sigma));
        state.set_recording(false);
        AutopilotAlice alice(sigma);
        ++count.sequences;
        for (int t = 0; t < o.length; ++t) {
          const LineId l = static_cast<LineId>(rng() % arr->num_lines());
          const Move m{l, alice.respond(state, l)};
          state.apply(m);
          ++count.moves;
          const auto res = autopilot_residual(*arr, alice.orientation(), state.pebbles());
          if (!state.ongoing() || std::any_of(res.begin(), res.end(), [](auto x) { return x != 0; })) {
            if (count.violations++ == 0)
              count.first = "sequence " + std::to_string(s) + " round " + std::to_string(state.round());
            break;
          }
        }
      }
      c.data["length"] = o.length;
    }
    c.data["sequences"] = count.sequences;
    c.data["moves"] = count.moves;
    c.data["violations"] = count.violations;
    if (count.violations)
      c.data["first_violation"] = count.first;
    c.passed = count.violations == 0;
    return c;
  });
  std::int64_t moves = 0, violations = 0;
  for (const auto& c : r.cases) {
    moves += c.data["moves"].get<std::int64_t>();
    violations += c.data["violations"].get<std::int64_t>();
  }
  r.summary = {{"exhaustive_cases", exhaustive}, {"moves", moves}, {"violations", violations}};
  return r;
}

SuiteReport claim6(const SuiteOptions& o)
{
  const int n_max = o.n_max.value_or(4);
  SuiteReport r{"claim6",
                "with f(L) - 1 pebbles the monovariant Bob wins against any Alice; every red pair lowers the total by "
                "at least 2, every green pair keeps it and lowers the distribution lexicographically, no pair "
                "changes the focal box, and every stage ended by increasing its first line strictly decreases (total, lex)",
                {},
                {}};
  const auto grid = family_grid(all_families, 1, n_max);
  const char* alices[] = {"random", "greedy", "autopilot"};
  r.cases = run_cases(grid.size(), o.jobs, [&](std::size_t i) {
    const auto [family, n] = grid[i];
    const auto arr = make(family, n, o.seed);
    CaseResult c{case_key(family, n), true, {}};
    std::int64_t games = 0, wins = 0, caps = 0, violations = 0, longest = 0, stages = 0, increased = 0, red = 0,
                 green = 0;
    std::string first;
    for (int k = 0; k < o.distributions; ++k) {
      const std::uint64_t seed = o.seed * 7919 + static_cast<std::uint64_t>(k);
      const Distribution p = k == 0       ? one_short_distribution(*arr)
                             : k % 2 == 1 ? random_distribution(arr->num_cells(), arr->f_value() - 1, seed)
                                          : near_optimal_distribution(*arr, arr->f_value() - 1, seed);
      for (const char* name : alices) {
        ++games;
        GameState state(arr, p);
        state.set_recording(false);
        auto alice = make_alice(name, *arr, seed);
        MonovariantBob bob(*arr);
        try {
          const Outcome out = play(state, *alice, bob, o.max_rounds);
          if (out.status == Status::BobWon) {
            ++wins;
            longest = std::max(longest, out.rounds);
          } else {
            ++caps;
            if (first.empty())
              first = std::string(name) + " distribution " + std::to_string(k) + ": round cap reached";
          }
        } catch (const InvariantViolation& e) {
          ++violations;
          if (first.empty())
            first = std::string(name) + " distribution " + std::to_string(k) + ": " + e.what();
        }
        const auto& s = bob.stats();
        stages += s.stages;
        increased += s.increased_first;
        red += s.red_pairs;
        green += s.green_pairs;
      }
    }
    c.data = {{"R", arr->num_cells()},       {"f_value", arr->f_value()}, {"games", games},
              {"bob_wins", wins},            {"cap_exhaustions", caps},   {"violations", violations},
              {"longest_game", longest},     {"stages", stages},          {"increased_first_stages", increased},
              {"red_pairs", red},            {"green_pairs", green}};
    if (!first.empty())
      c.data["first_failure"] = first;
    c.passed = wins == games && caps == 0 && violations == 0;
    return c;
  });
  std::int64_t games = 0, caps = 0, violations = 0, red = 0, green = 0;
  for (const auto& c : r.cases) {
    games += c.data["games"].get<std::int64_t>();
    caps += c.data["cap_exhaustions"].get<std::int64_t>();
    violations += c.data["violations"].get<std::int64_t>();
    red += c.data["red_pairs"].get<std::int64_t>();
    green += c.data["green_pairs"].get<std::int64_t>();
  }
  r.summary = {{"games", games},
               {"cap_exhaustions", caps},
               {"violations", violations},
               {"red_pairs", red},
               {"green_pairs", green},
               {"max_rounds", o.max_rounds}};
  return r;
}

struct SmallPairCount {
  std::int64_t covered = 0; // reply sequences of full depth accounted for
  std::int64_t lost = 0;
  std::int64_t violations = 0;
  int deepest_win = 0;
};

void smallpair_dfs(const GameState& state, const SmallPairBob& bob, int depth, int max_depth, SmallPairCount& out)
{
  if (!state.ongoing()) {
    out.covered += std::int64_t{1} << (max_depth - depth);
    out.deepest_win = std::max(out.deepest_win, depth);
    return;
  }
  if (depth == max_depth) {
    ++out.covered;
    ++out.lost;
    return;
  }
  SmallPairBob probe = bob;
  const LineId l = probe.choose_line(state);
  for (Side s : {Side::Plus, Side::Minus}) {
    GameState next = state;
    SmallPairBob b = probe;
    const Move m{l, s};
    next.apply(m);
    try {
      b.observe(next, m);
    } catch (const InvariantViolation&) {
      ++out.violations;
      out.covered += std::int64_t{1} << (max_depth - depth - 1);
      continue;
    }
    smallpair_dfs(next, b, depth + 1, max_depth, out);
  }
}

SuiteReport smallpair(const SuiteOptions& o)
{
  const int depth = o.depth.value_or(12);
  SuiteReport r{"smallpair",
                "from a distribution with a small pair (u, v), Bob walking the separating lines keeps p(u) + p(v) "
                "constant and empties a box against every sequence of Alice replies",
                {},
                {}};
  r.cases = run_cases(1, o.jobs, [&](std::size_t) {
    const auto arr = make(Family::Parallel, 3, o.seed);
    const Distribution p{1, 9, 9, 2};
    GameState state(arr, p);
    state.set_recording(false);
    SmallPairBob bob(*arr, p);
    SmallPairCount count;
    smallpair_dfs(state, bob, 0, depth, count);
    CaseResult c{"row4/p=1,9,9,2", true, {}};
    const auto [u, v] = bob.pair();
    c.data = {{"pair", {u + 1, v + 1}},
              {"pair_sum", bob.pair_sum()},
              {"depth", depth},
              {"sequences", count.covered},
              {"lost", count.lost},
              {"violations", count.violations},
              {"deepest_win", count.deepest_win}};
    c.passed = count.covered == (std::int64_t{1} << depth) && count.lost == 0 && count.violations == 0;
    return c;
  });
  return r;
}

SuiteReport ball_bound(const SuiteOptions& o)
{
  const int n_max = o.n_max.value_or(12);
  const int seeds = o.seeds.value_or(10);
  SuiteReport r{"ball-bound",
                "in a general-position arrangement of n lines, fewer than r*n + 1 cells lie within dual distance r of "
                "any cell, other than the cell itself, for 1 <= r < n/2",
                {},
                {}};
  std::vector<std::pair<int, std::uint64_t>> jobs;
  for (int n = 4; n <= n_max; ++n)
    for (int s = 0; s < seeds; ++s)
      jobs.emplace_back(n, o.seed + static_cast<std::uint64_t>(s));
  r.cases = run_cases(jobs.size(), o.jobs, [&](std::size_t i) {
    const auto [n, seed] = jobs[i];
    const auto arr = Arrangement::build(generate(Family::GeneralPosition, n, seed));
    CaseResult c{case_key(Family::GeneralPosition, n, seed), true, {}};
    std::int64_t checks = 0, violations = 0;
    double worst = 0;
    for (BoxId u = 0; u < arr.num_cells(); ++u) {
      const auto dist = arr.bfs_distances(u);
      for (int rad = 1; 2 * rad < n; ++rad) {
        const auto ball = std::count_if(dist.begin(), dist.end(), [&](int d) { return d >= 1 && d <= rad; });
        if (ball != arr.ball_size(u, rad))
          ++violations;
        if (ball > static_cast<std::int64_t>(rad) * n)
          ++violations;
        worst = std::max(worst, static_cast<double>(ball) / (rad * n));
        ++checks;
      }
    }
    c.data = {{"R", arr.num_cells()}, {"checks", checks}, {"violations", violations}, {"max_ratio", worst}};
    c.passed = violations == 0;
    return c;
  });
  return r;
}

SuiteReport distance(const SuiteOptions& o)
{
  const int n_max = o.n_max.value_or(6);
  const int seeds = o.seeds.value_or(5);
  SuiteReport r{"distance",
                "shortest dual-graph paths between cells have length equal to the number of lines separating them",
                {},
                {}};
  std::vector<std::tuple<Family, int, std::uint64_t>> jobs;
  for (Family f : all_families)
    for (int n = 1; n <= n_max; ++n)
      for (int s = 0; s < (f == Family::GeneralPosition ? seeds : 1); ++s)
        jobs.emplace_back(f, n, o.seed + static_cast<std::uint64_t>(s));
  r.cases = run_cases(jobs.size(), o.jobs, [&](std::size_t i) {
    const auto [family, n, seed] = jobs[i];
    const auto arr = Arrangement::build(generate(family, n, seed));
    CaseResult c{case_key(family, n, family == Family::GeneralPosition ? std::optional(seed) : std::nullopt), true, {}};
    std::int64_t pairs = 0, violations = 0;
    for (BoxId u = 0; u < arr.num_cells(); ++u) {
      const auto dist = arr.bfs_distances(u);
      for (BoxId v = 0; v < arr.num_cells(); ++v) {
        int hamming = 0;
        for (LineId l = 0; l < arr.num_lines(); ++l)
          hamming += arr.cell(u).signs[l] != arr.cell(v).signs[l];
        violations += dist[v] != hamming || arr.dual_distance(u, v) != hamming;
        ++pairs;
      }
    }
    c.data = {{"R", arr.num_cells()}, {"pairs", pairs}, {"violations", violations}};
    c.passed = violations == 0;
    return c;
  });
  return r;
}

} // namespace

bool SuiteReport::passed() const
{
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
}

Json SuiteReport::to_json() const
{
  Json list = Json::array();
  for (const auto& c : cases)
    list.push_back({{"key", c.key}, {"passed", c.passed}, {"data", c.data}});
  return Json{{"suite", suite},
              {"claim", claim},
              {"result", passed() ? "PASS" : "FAIL"},
              {"summary", summary},
              {"cases", std::move(list)}};
}

std::string SuiteReport::to_text() const
{
  std::ostringstream out;
  out << "suite: " << suite << "\nclaim: " << claim << "\n";
  for (const auto& c : cases) {
    out << (c.passed ? "  ok    " : "  FAIL  ") << c.key;
    for (const auto& [k, v] : c.data.items())
      out << ' ' << k << '=' << v.dump();
    out << '\n';
  }
  for (const auto& [k, v] : summary.items())
    out << k << ": " << v.dump() << '\n';
  const auto failed = std::count_if(cases.begin(), cases.end(), [](auto& c) { return !c.passed; });
  out << "result: " << (passed() ? "PASS" : "FAIL") << " (" << cases.size() - failed << '/' << cases.size()
      << " cases)\n";
  return out.str();
}

const std::vector<std::string_view>& suite_names()
{
  static const std::vector<std::string_view> names{"lemma1",     "claim6",    "theorem1-1d", "fig-n5",
                                                   "ball-bound", "smallpair", "distance"};
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& o)
{
  if (name == "theorem1-1d")
    return theorem1_1d(o);
  if (name == "fig-n5")
    return fig_n5(o);
  if (name == "lemma1")
    return lemma1(o);
  if (name == "claim6")
    return claim6(o);
  if (name == "smallpair")
    return smallpair(o);
  if (name == "ball-bound")
    return ball_bound(o);
  if (name == "distance")
    return distance(o);
  throw InputError("unknown suite '" + std::string(name) + "'");
}

Distribution near_optimal_distribution(const Arrangement& arr, std::int64_t total, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  Orientation sigma = Orientation::optimal(arr);
  for (int steps = static_cast<int>(rng() % 21); steps > 0; --steps)
    sigma.flip(static_cast<LineId>(rng() % arr.num_lines()));
  Distribution p = autopilot_distribution(arr, sigma);
  for (std::int64_t t = pebble::total(p); t < total; ++t)
    ++p[rng() % p.size()];
  for (std::int64_t t = pebble::total(p); t > total;) {
    auto& x = p[rng() % p.size()];
    if (x > 1) {
      --x;
      --t;
    }
  }
  return p;
}

Distribution random_distribution(std::size_t boxes, std::int64_t total, std::uint64_t seed)
{
  if (boxes == 0 || total < 0)
    throw InputError("cannot spread " + std::to_string(total) + " pebbles over " + std::to_string(boxes) + " boxes");
  Distribution p(boxes, 0);
  std::int64_t left = total;
  if (total >= static_cast<std::int64_t>(boxes)) {
    std::fill(p.begin(), p.end(), 1);
    left -= static_cast<std::int64_t>(boxes);
  }
  std::mt19937_64 rng(seed);
  for (; left > 0; --left)
    ++p[rng() % boxes];
  return p;
}

std::vector<CaseResult> run_cases(std::size_t count, unsigned jobs,
                                  const std::function<CaseResult(std::size_t)>& evaluate)
{
  if (jobs == 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  std::vector<CaseResult> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        results[i] = evaluate(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t)
    threads.emplace_back(worker);
  worker();
  for (auto& t : threads)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
  std::sort(results.begin(), results.end(), [](const CaseResult& a, const CaseResult& b) { return a.key < b.key; });
  return results;
}

} // namespace pebble::cli
