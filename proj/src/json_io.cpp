#include "reclab/json_io.hpp"

namespace reclab {

namespace {

json members_json(const WindowSet& s) {
  json arr = json::array();
  for (auto v : s.members()) arr.push_back(v);
  return arr;
}

json gap_json(const std::optional<std::uint64_t>& g) { return g ? json(*g) : json(nullptr); }

WindowSet complement(const WindowSet& s) {
  return WindowSet::from_predicate(s.horizon(), [&](std::uint64_t n) { return !s.contains(n); });
}

Relation relation_from_symbol(const std::string& s) {
  for (auto r : {Relation::Less, Relation::LessEq, Relation::Equal, Relation::Greater, Relation::GreaterEq}) {
    if (relation_symbol(r) == s) return r;
  }
  throw DomainError("unknown relation '" + s + "'");
}

}  // namespace

json to_json(const Rational& x) { return x.str(); }

json to_json(const ContinuedFraction& cf) { return cf.to_strings(); }

ContinuedFraction cf_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("continued fraction must be a list of strings");
  std::vector<std::string> q;
  for (const auto& e : j) {
    if (!e.is_string()) throw DomainError("continued fraction quotients must be strings");
    q.push_back(e.get<std::string>());
  }
  return ContinuedFraction::from_strings(q);
}

json window_json(const WindowSet& s) {
  json j;
  j["N"] = s.horizon();
  j["in"] = members_json(s);
  j["out"] = members_json(complement(s));
  j["unknown"] = json::array();
  j["max_gap_in"] = gap_json(max_gap(s));
  return j;
}

json window_json(const ReturnWindow& w) {
  json j;
  j["N"] = w.horizon();
  j["in"] = members_json(w.in);
  j["out"] = members_json(w.out);
  j["unknown"] = members_json(w.unknown);
  j["max_gap_in"] = gap_json(w.max_gap_in);
  return j;
}

json to_json(const GapCertificate& cert) {
  json j;
  j["index"] = cert.index;
  json links = json::array();
  for (const auto& l : cert.links) {
    json r;
    r["link"] = l.name;
    r["lhs"] = to_json(l.lhs);
    r["relation"] = relation_symbol(l.relation);
    r["rhs"] = to_json(l.rhs);
    r["holds"] = l.holds;
    links.push_back(r);
  }
  j["links"] = links;
  if (cert.margin) {
    j["m"] = cert.margin->m.get_str();
    j["sup_bound_on_Hm"] = to_json(cert.margin->sup_bound_on_Hm);
    j["beta_norm_lower"] = to_json(cert.margin->beta_norm_lower);
    j["margin"] = to_json(cert.margin->margin);
  } else {
    j["margin"] = nullptr;
  }
  j["success"] = cert.success();
  j["failed_link"] = cert.success() ? json(nullptr) : json(cert.failed_link);
  return j;
}

json to_json(const SpotCheckReport& r) {
  json j;
  j["samples"] = r.samples;
  j["minimum"] = r.minimum ? to_json(*r.minimum) : json(nullptr);
  j["argmin"] = r.argmin ? to_json(*r.argmin) : json(nullptr);
  j["alpha_perturbation"] = to_json(r.alpha_perturbation);
  return j;
}

json to_json(const Dichotomy& d) {
  json j;
  switch (d.kind) {
    case Dichotomy::Kind::Covers: j["verdict"] = "covers"; break;
    case Dichotomy::Kind::Period: j["verdict"] = "period"; break;
    case Dichotomy::Kind::WindowArtifact: j["verdict"] = "window_artifact"; break;
  }
  j["witness"] = d.witness == 0 ? json(nullptr) : json(d.witness);
  j["period"] = d.period == 0 ? json(nullptr) : json(d.period);
  return j;
}

json to_json(const ColorabilityResult& r) {
  json j;
  switch (r.status) {
    case ColorabilityResult::Status::Colorable: j["status"] = "colorable"; break;
    case ColorabilityResult::Status::NotColorable: j["status"] = "not_colorable"; break;
    case ColorabilityResult::Status::BudgetExceeded: j["status"] = "budget_exceeded"; break;
  }
  j["nodes"] = r.nodes;
  j["coloring"] = r.coloring;
  return j;
}

json to_json(const TheoremBConfig& c) {
  json j;
  j["alpha"] = to_json(c.alpha);
  j["beta"] = to_json(c.beta);
  j["delta"] = to_json(c.delta);
  j["lipschitz"] = to_json(c.lipschitz);
  j["selected_indices"] = c.selected_indices;
  return j;
}

void write_window_csv(std::ostream& out, const ReturnWindow& w) {
  out << "n,status\n";
  for (std::uint64_t n = 1; n <= w.horizon(); ++n) {
    const char* s = w.in.contains(n) ? "in" : w.out.contains(n) ? "out" : "unknown";
    out << n << ',' << s << '\n';
  }
}

void write_window_csv(std::ostream& out, const WindowSet& s) {
  out << "n,status\n";
  for (std::uint64_t n = 1; n <= s.horizon(); ++n) out << n << ',' << (s.contains(n) ? "in" : "out") << '\n';
}

bool reverify_transcript(const json& transcript) {
  for (const auto& l : transcript.at("links")) {
    const Rational lhs = Rational::parse(l.at("lhs").get<std::string>());
    const Rational rhs = Rational::parse(l.at("rhs").get<std::string>());
    const Relation rel = relation_from_symbol(l.at("relation").get<std::string>());
    if (evaluate(rel, lhs, rhs) != l.at("holds").get<bool>()) return false;
  }
  return true;
}

}  // namespace reclab
