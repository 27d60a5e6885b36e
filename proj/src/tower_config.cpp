#include <map>
#include <sstream>

#include "reclab/dynsys.hpp"

namespace reclab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

RealSpec parse_real_spec(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.rfind("cf:", 0) == 0) {
    std::vector<BigInt> a;
    for (const auto& q : split(text.substr(3), ',')) a.push_back(parse_bigint(q));
    return ContinuedFraction(std::move(a));
  }
  if (text.rfind("thmb:", 0) == 0) {
    const auto parts = split(text.substr(5), ':');
    if (parts.size() != 2) throw DomainError("expected thmb:depth:a1");
    return build_theoremB_quotients(parse_bigint(parts[0]).get_ui(), parse_bigint(parts[1]));
  }
  return Rational::parse(text).frac();
}

SkewTower parse_tower_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line without '=': " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const std::string kind = kv.count("base") ? kv["base"] : "rotation";
  SkewTower tower{TorusRotation{}, std::nullopt, {}};
  if (kind == "rotation") {
    if (!kv.count("alpha")) throw DomainError("rotation base needs alpha");
    TorusRotation rot;
    for (const auto& a : split(kv["alpha"], ';')) rot.alpha.push_back(parse_real_spec(a));
    tower.base = std::move(rot);
  } else if (kind == "odometer") {
    std::vector<std::uint32_t> bases;
    for (const auto& b : split(kv.count("bases") ? kv["bases"] : "2", ',')) {
      bases.push_back(static_cast<std::uint32_t>(parse_bigint(b).get_ui()));
    }
    tower.base = Odometer(std::move(bases));
  } else {
    throw DomainError("unknown base kind '" + kind + "'");
  }
  if (kv.count("h1")) tower.h1 = parse_skew_map(kv["h1"]);
  if (kv.count("fibers")) {
    for (const auto& f : split(kv["fibers"], ';')) tower.fibers.push_back(parse_skew_map(f));
  }
  for (const auto& [key, value] : kv) {
    if (key != "base" && key != "alpha" && key != "bases" && key != "h1" && key != "fibers") {
      throw DomainError("unknown tower key '" + key + "'");
    }
  }
  tower.validate();
  return tower;
}

}  // namespace reclab
