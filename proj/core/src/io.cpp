#include "pebble/io.hpp"

#include "pebble/error.hpp"

#include <fstream>
#include <sstream>

namespace pebble {

namespace {

Integer coefficient(const nlohmann::json& entry, const char* key, std::size_t index)
{
  const std::string where = "lines[" + std::to_string(index) + "]." + key;
  if (!entry.contains(key))
    throw InputError(where + ": missing");
  const auto& v = entry.at(key);
  try {
    if (v.is_string())
      return parse_integer(v.get<std::string>());
    if (v.is_number_integer())
      return Integer(v.get<std::int64_t>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected an integer or an integer string");
}

nlohmann::json parse_file(const std::filesystem::path& path)
{
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

double to_double(const Rational& r)
{
  return r.convert_to<double>();
}

} // namespace

std::string read_text_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Line> lines_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("lines") || !j.at("lines").is_array())
    throw InputError("expected an object with a \"lines\" array");
  std::vector<Line> lines;
  const auto& arr = j.at("lines");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& entry = arr[i];
    if (!entry.is_object())
      throw InputError("lines[" + std::to_string(i) + "]: expected an object");
    Integer a = coefficient(entry, "a", i);
    Integer b = coefficient(entry, "b", i);
    Integer c = coefficient(entry, "c", i);
    if (a == 0 && b == 0)
      throw InputError("lines[" + std::to_string(i) + "]: a and b are both zero");
    lines.emplace_back(std::move(a), std::move(b), std::move(c));
  }
  return lines;
}

Json lines_to_json(std::span<const Line> lines)
{
  Json out = Json::array();
  for (const Line& l : lines)
    out.push_back({{"a", l.a().str()}, {"b", l.b().str()}, {"c", l.c().str()}});
  return Json{{"lines", std::move(out)}};
}

std::vector<Line> read_lines_file(const std::filesystem::path& path)
{
  try {
    return lines_from_json(parse_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Distribution distribution_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("pebbles") || !j.at("pebbles").is_array())
    throw InputError("expected an object with a \"pebbles\" array");
  Distribution p;
  const auto& arr = j.at("pebbles");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer() || arr[i].get<std::int64_t>() < 0)
      throw InputError("pebbles[" + std::to_string(i) + "]: expected a non-negative integer");
    p.push_back(arr[i].get<std::int64_t>());
  }
  return p;
}

Json distribution_to_json(std::span<const std::int64_t> pebbles)
{
  return Json{{"pebbles", std::vector<std::int64_t>(pebbles.begin(), pebbles.end())}};
}

Distribution read_distribution_file(const std::filesystem::path& path)
{
  try {
    return distribution_from_json(parse_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json point_to_json(const Point& p)
{
  return Json{{"x", to_string(p.x)}, {"y", to_string(p.y)}};
}

Json analysis_to_json(const Arrangement& arr, bool polygons)
{
  Json out;
  out["n"] = arr.num_lines();
  out["R"] = arr.num_cells();
  out["f_value"] = arr.f_value();

  Json lines = Json::array();
  for (LineId l = 0; l < arr.num_lines(); ++l) {
    const LineInfo& info = arr.line_info(l);
    lines.push_back({{"id", l + 1},
                     {"a", info.line.a().str()},
                     {"b", info.line.b().str()},
                     {"c", info.line.c().str()},
                     {"rank", info.rank},
                     {"smaller_side", to_string(info.smaller_side)},
                     {"counts", {{"plus", info.count(Side::Plus)}, {"minus", info.count(Side::Minus)}}}});
  }
  out["lines"] = std::move(lines);

  std::optional<BoundingBox> box;
  if (polygons) {
    box = arr.display_box();
    out["view_box"] = {to_double(box->xmin), to_double(box->ymin), to_double(box->xmax), to_double(box->ymax)};
  }
  Json cells = Json::array();
  for (const Cell& c : arr.cells()) {
    Json cell{{"id", c.id + 1}, {"signs", arr.sign_string(c.id)}, {"witness", point_to_json(c.witness)}};
    if (box) {
      Json poly = Json::array();
      for (const Point& p : arr.polygon(c.id, *box))
        poly.push_back({to_double(p.x), to_double(p.y)});
      cell["polygon"] = std::move(poly);
    }
    cells.push_back(std::move(cell));
  }
  out["cells"] = std::move(cells);

  Json edges = Json::array();
  for (const auto& [u, v] : arr.edges())
    edges.push_back({u + 1, v + 1, arr.separating_line(u, v) + 1});
  out["dual_edges"] = std::move(edges);
  return out;
}

Json orientation_to_json(const Orientation& sigma)
{
  Json out = Json::array();
  for (Side s : sigma.minus_sides())
    out.push_back(to_string(s));
  return out;
}

Json pair_to_json(const PairRecord& pair)
{
  return Json{{"first", pair.first + 1},
              {"second", pair.second + 1},
              {"color", to_string(pair.color)},
              {"delta_total", pair.delta_total},
              {"lex_sign", pair.lex_sign}};
}

Json status_to_json(const GameState& state)
{
  Json out{{"state", state.ongoing() ? "ongoing" : "bob_won"}, {"round", state.round()}};
  if (state.empty_box())
    out["box"] = *state.empty_box() + 1;
  return out;
}

Json alice_diagnostics(const AliceStrategy& alice, const GameState& state)
{
  Json out{{"strategy", alice.name()}};
  if (const auto* autopilot = dynamic_cast<const AutopilotAlice*>(&alice)) {
    out["minus_sides"] = orientation_to_json(autopilot->orientation());
    out["residual"] = autopilot_residual(state.arrangement(), autopilot->orientation(), state.pebbles());
  }
  return out;
}

Json bob_diagnostics(const BobStrategy& bob, const GameState& state)
{
  Json out{{"strategy", bob.name()}};
  if (const auto* mono = dynamic_cast<const MonovariantBob*>(&bob)) {
    out["reference"] = mono->reference().pebbles;
    out["X"] = mono->reference().total;
    if (const auto& stage = mono->stage()) {
      Json seq = Json::array();
      for (LineId l : stage->sequence())
        seq.push_back({{"line", l + 1}, {"rank", state.arrangement().rank(l)}});
      Json stack = Json::array();
      for (std::size_t k : stage->stack())
        stack.push_back(stage->sequence()[k] + 1);
      Json pairs = Json::array();
      for (const auto& p : mono->pairs())
        pairs.push_back(pair_to_json(p));
      out["stage"] = {{"focal", stage->focal() + 1},
                      {"sequence", std::move(seq)},
                      {"index", stage->index() + 1},
                      {"stack", std::move(stack)},
                      {"pairs", std::move(pairs)},
                      {"ended", stage->end() ? Json(to_string(*stage->end())) : Json(nullptr)}};
    } else {
      out["stage"] = nullptr;
    }
    const auto& s = mono->stats();
    out["stats"] = {{"stages", s.stages},
                    {"focal_emptied", s.focal_emptied},
                    {"increased_first", s.increased_first},
                    {"red_pairs", s.red_pairs},
                    {"green_pairs", s.green_pairs}};
  } else if (const auto* small = dynamic_cast<const SmallPairBob*>(&bob)) {
    const auto [u, v] = small->pair();
    Json path = Json::array();
    for (BoxId b : small->path())
      path.push_back(b + 1);
    Json lines = Json::array();
    for (LineId l : small->path_lines())
      lines.push_back(l + 1);
    out["pair"] = {u + 1, v + 1};
    out["path"] = std::move(path);
    out["path_lines"] = std::move(lines);
    out["pair_sum"] = small->pair_sum();
  }
  return out;
}

Json search_result_to_json(const SearchResult& r)
{
  Json pv = Json::array();
  for (const Move& m : r.principal_variation)
    pv.push_back({{"line", m.line + 1}, {"side", to_string(m.removal_side)}});
  return Json{{"verdict", r.verdict == Verdict::BobForcesWin ? "bob_forces_win" : "no_forced_win"},
              {"depth", r.depth},
              {"principal_variation", std::move(pv)},
              {"nodes", r.nodes}};
}

Json certification_to_json(const Certification& c)
{
  return Json{{"result", c.certified ? "certified" : "inconclusive"},
              {"f", c.f},
              {"depth_needed", c.depth_needed},
              {"distributions_checked", c.distributions_checked},
              {"nodes", c.nodes},
              {"detail", c.detail}};
}

} // namespace pebble
