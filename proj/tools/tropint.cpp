// Batch front end: matroid queries and fan operations with canonical JSON output.
//
// Exit codes: 0 success, 1 parse error, 2 validation failure, 3 mathematical
// precondition violated. Failures print {"error": kind, "message": text} on stderr.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tropint/tropint.hpp"

namespace {

using tropint::ErrorKind;
using tropint::FanCycle;
using tropint::Matroid;
using tropint::json::Json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
      return 1;
    case ErrorKind::NotAMatroid:
    case ErrorKind::InvalidRank:
    case ErrorKind::SizeOverflow:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::GroundSetMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotPure:
      return 2;
    default:
      return 3;
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) tropint::fail(ErrorKind::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    tropint::fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

bool is_matroid_file(const Json& j) { return j.is_object() && j.contains("kind"); }

Matroid read_matroid(const std::string& path) { return tropint::json::parse_matroid(read_json(path)); }

/// A fan file, or a matroid file standing for its Bergman fan.
FanCycle read_cycle(const std::string& path) {
  const Json j = read_json(path);
  if (is_matroid_file(j)) return tropint::to_fan(tropint::bergman_fan(tropint::json::parse_matroid(j)));
  return tropint::json::parse_fan(j);
}

tropint::RatVector parse_point(const std::string& text) {
  tropint::RatVector p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      p.emplace_back(item);
    } catch (const std::exception&) {
      tropint::fail(ErrorKind::ParseError, "bad coordinate \"" + item + "\"");
    }
  }
  return p;
}

std::vector<int> parse_index_list(const std::string& text, int source_size) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      tropint::fail(ErrorKind::ParseError, "bad index \"" + item + "\"");
    }
    if (v < 1 || v > source_size) tropint::fail(ErrorKind::IndexOutOfRange, "index " + item + " out of range");
    out.push_back(v - 1);
  }
  return out;
}

void emit(const Json& j, const std::string& out) {
  const std::string text = tropint::json::dump(j);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) tropint::fail(ErrorKind::ParseError, "cannot write " + out);
  f << text;
}

Json subsets(const std::vector<tropint::SubsetMask>& sets) {
  Json out = Json::array();
  for (auto s : sets) out.push_back(tropint::json::subset(s));
  return out;
}

Json matroid_query(const Matroid& m, const std::string& query, const std::string& set) {
  using namespace tropint;
  if (query == "rank") {
    const SubsetMask s = set.empty() ? full_mask(m.size()) : json::parse_subset_text(set, m.size(), "--set");
    return {{"rank", m.rank(s)}, {"set", json::subset(s)}};
  }
  if (query == "flats") {
    auto flats = m.flats();
    std::sort(flats.begin(), flats.end(), [&](SubsetMask a, SubsetMask b) {
      return std::make_pair(m.rank(a), json::subset(a)) < std::make_pair(m.rank(b), json::subset(b));
    });
    return {{"count", flats.size()}, {"flats", subsets(flats)}};
  }
  if (query == "chains") {
    Json chains = Json::array();
    for (const auto& c : m.maximal_chains()) chains.push_back(subsets(c.flats));
    std::sort(chains.begin(), chains.end());
    return {{"chains", chains}, {"count", chains.size()}};
  }
  if (query == "components") {
    auto comps = connected_components(m);
    std::sort(comps.begin(), comps.end(), [](SubsetMask a, SubsetMask b) { return json::subset(a) < json::subset(b); });
    return {{"components", subsets(comps)}, {"count", comps.size()}};
  }
  // validate: parsing already checked the axioms.
  return {{"n", m.size()}, {"rank", m.rank(full_mask(m.size()))}, {"valid", true}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tropical intersection theory on matroid fans"};
  app.require_subcommand(1);

  std::string file, query, set, out;
  auto* matroid = app.add_subcommand("matroid", "Query a matroid file");
  matroid->add_option("file", file, "matroid JSON")->required();
  matroid->add_option("query", query, "rank | flats | chains | components | validate")
      ->required()
      ->check(CLI::IsMember({"rank", "flats", "chains", "components", "validate"}));
  matroid->add_option("--set", set, "subset for rank, e.g. 1,3");

  auto* fan = app.add_subcommand("fan", "Fan operations; output is canonical fan JSON");
  fan->require_subcommand(1);

  std::string ambient, point, source, target, map, function;
  std::vector<std::string> inputs;
  bool projective = false, domain = false;
  int marks = 0;

  auto* bergman = fan->add_subcommand("bergman", "Bergman fan of a matroid");
  bergman->add_option("matroid", file)->required();
  auto* divisor = fan->add_subcommand("divisor", "Weil divisor of a function on a cycle");
  divisor->add_option("cycle", file, "fan or matroid JSON")->required();
  divisor->add_option("function", function, "function JSON")->required();
  auto* product = fan->add_subcommand("product", "Intersection product inside B(M)");
  product->add_option("--ambient", ambient, "matroid JSON of M")->required();
  product->add_option("cycles", inputs, "two fan or matroid files")->required()->expected(2);
  auto* pullback = fan->add_subcommand("pullback", "Pull-back along a coordinate morphism");
  pullback->add_option("--source", source, "source matroid")->required();
  pullback->add_option("--target", target, "target matroid")->required();
  pullback->add_option("--map", map, "source coordinate of each target coordinate, e.g. 1,1,2")->required();
  pullback->add_option("cycle", file, "cycle in the target")->required();
  auto* star = fan->add_subcommand("star", "Star of a cycle at a point");
  star->add_option("cycle", file)->required();
  star->add_option("--point", point, "rational coordinates, e.g. 0,-1/2,0")->required();
  auto* degree = fan->add_subcommand("degree", "Degree of a zero-dimensional cycle");
  degree->add_option("cycle", file)->required();
  degree->add_flag("--projective", projective, "degree of the projective closure");
  auto* face = fan->add_subcommand("face-at-infinity", "Face of a cycle at x_R = -infinity");
  face->add_option("cycle", file)->required();
  face->add_option("--set", set, "the set R, e.g. 1,2")->required();
  auto* moduli = fan->add_subcommand("moduli", "The fan M_n as a quotient of B(K_{n-1})");
  moduli->add_option("--n", marks, "number of marked points")->required();
  moduli->add_flag("--domain", domain, "print B(K_{n-1})/L instead of its image in M_n");

  for (auto* sub : fan->get_subcommands({})) sub->add_option("--out", out, "write the result to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    using namespace tropint;
    if (*matroid) {
      const Json j = read_json(file);
      emit(matroid_query(json::parse_matroid(j), query, set), "");
      return 0;
    }
    FanCycle result(0, kZeroDim);
    if (*bergman) {
      result = to_fan(bergman_fan(read_matroid(file)));
    } else if (*divisor) {
      const FanCycle x = read_cycle(file);
      result = tropint::divisor(json::parse_function(read_json(function), x.ambient()), x);
    } else if (*product) {
      const Matroid m = read_matroid(ambient);
      const FanCycle a = read_cycle(inputs[0]), b = read_cycle(inputs[1]);
      const auto ba = as_braid(a), bb = as_braid(b);
      result = ba && bb ? to_fan(intersect_on_matroid(m, *ba, *bb)) : intersect_on_matroid(m, a, b);
    } else if (*pullback) {
      const Matroid s = read_matroid(source), t = read_matroid(target);
      const CoordinateMorphism f(s, t, parse_index_list(map, s.size()));
      result = to_fan(f.pullback(to_braid(read_cycle(file))));
    } else if (*star) {
      result = star_at(read_cycle(file), parse_point(point));
    } else if (*degree) {
      const FanCycle x = read_cycle(file);
      emit({{"degree", json::integer(projective ? projective_degree(x) : degree_zero_dim(x))}}, out);
      return 0;
    } else if (*face) {
      const FanCycle x = read_cycle(file);
      result = face_at_infinity(x, json::parse_subset_text(set, x.ambient(), "--set"));
    } else if (*moduli) {
      const ModuliModel model = moduli_mn(marks);
      result = domain ? model.quotient_fan : model.image;
    }
    emit(json::fan(result), out);
    return 0;
  } catch (const tropint::Error& e) {
    std::string message = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    std::cerr << Json{{"error", std::string(to_string(e.kind()))}, {"message", message}}.dump() << "\n";
    return exit_code(e.kind());
  }
}
