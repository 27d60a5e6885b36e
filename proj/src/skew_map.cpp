#include "reclab/skew_map.hpp"

#include <mpfr.h>

#include <sstream>

namespace reclab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr mpfr_prec_t kTrigPrecision = 160;

Rational horner(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Upper bound for 2*pi (pi < 22/7).
const Rational kTwoPiUpper(44, 7);

Rational term_lipschitz(const SkewMap::Term& t) {
  return std::visit(overloaded{
                        [](const SkewMap::LinearWinding& l) { return Rational(std::labs(l.k)); },
                        [](const SkewMap::PolyLift& p) {
                          Rational s(0);
                          for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
                            s += Rational(static_cast<long>(i)) * p.coeffs[i].abs();
                          }
                          return s;
                        },
                        [](const SkewMap::TrigPoly& p) {
                          Rational s(0);
                          for (std::size_t k = 1; k < p.cos_coeffs.size(); ++k) {
                            s += Rational(static_cast<long>(k)) * p.cos_coeffs[k].abs();
                          }
                          for (std::size_t k = 0; k < p.sin_coeffs.size(); ++k) {
                            s += Rational(static_cast<long>(k + 1)) * p.sin_coeffs[k].abs();
                          }
                          return kTwoPiUpper * s;
                        },
                        [](const SkewMap::Constant&) { return Rational(0); },
                        [](const SkewMap::Cylinder&) -> Rational {
                          throw DomainError("cylinder maps have no circle Lipschitz bound");
                        },
                    },
                    t);
}

// Real value of the term's lift at x in [0, 1). Linear terms contribute k*x;
// they cancel in zero-winding sums and are skipped by the caller.
Interval term_lift(const SkewMap::Term& t, const Rational& x) {
  return std::visit(overloaded{
                        [&](const SkewMap::LinearWinding& l) { return Interval::point(Rational(l.k) * x); },
                        [&](const SkewMap::PolyLift& p) { return Interval::point(horner(p.coeffs, x)); },
                        [&](const SkewMap::TrigPoly& p) { return eval_trig(p, x); },
                        [&](const SkewMap::Constant& c) { return Interval::point(c.value); },
                        [](const SkewMap::Cylinder&) -> Interval {
                          throw DomainError("cylinder maps have no circle lift");
                        },
                    },
                    t);
}

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(trim(item)));
  return out;
}

SkewMap parse_term(const std::string& raw) {
  const std::string text = trim(raw);
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("skew map term needs 'kind:args': '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (kind == "linear") {
    const BigInt k = parse_bigint(args);
    if (!k.fits_slong_p()) throw DomainError("winding too large");
    return SkewMap::linear(k.get_si());
  }
  if (kind == "poly") return SkewMap::poly(parse_list(args));
  if (kind == "const") return SkewMap::constant(Rational::parse(trim(args)));
  if (kind == "trig") {
    std::vector<Rational> c, s;
    std::stringstream ss(args);
    std::string part;
    while (std::getline(ss, part, ';')) {
      part = trim(part);
      if (part.rfind("cos=", 0) == 0) {
        c = parse_list(part.substr(4));
      } else if (part.rfind("sin=", 0) == 0) {
        s = parse_list(part.substr(4));
      } else if (!part.empty()) {
        throw DomainError("trig term parts are cos=... and sin=...");
      }
    }
    return SkewMap::trig(std::move(c), std::move(s));
  }
  if (kind == "cylinder") {
    const auto second = args.find(':');
    if (second == std::string::npos) throw DomainError("cylinder needs 'cylinder:depth:v0,v1,...'");
    const BigInt depth = parse_bigint(args.substr(0, second));
    return SkewMap::cylinder(depth.get_ui(), parse_list(args.substr(second + 1)));
  }
  throw DomainError("unknown skew map kind '" + kind + "'");
}

}  // namespace

SkewMap SkewMap::linear(long k) { return SkewMap({LinearWinding{k}}); }

SkewMap SkewMap::poly(std::vector<Rational> coeffs) {
  if (coeffs.empty()) coeffs.push_back(Rational(0));
  Rational tail(0);
  for (std::size_t i = 1; i < coeffs.size(); ++i) tail += coeffs[i];
  if (!tail.is_zero()) throw DomainError("polynomial lift must satisfy p(0) = p(1)");
  return SkewMap({PolyLift{std::move(coeffs)}});
}

SkewMap SkewMap::trig(std::vector<Rational> cos_coeffs, std::vector<Rational> sin_coeffs) {
  if (cos_coeffs.empty()) cos_coeffs.push_back(Rational(0));
  return SkewMap({TrigPoly{std::move(cos_coeffs), std::move(sin_coeffs)}});
}

SkewMap SkewMap::constant(const Rational& c) { return SkewMap({Constant{c.frac()}}); }

SkewMap SkewMap::cylinder(std::size_t depth, std::vector<Rational> table) {
  if (table.empty()) throw DomainError("cylinder table is empty");
  for (auto& v : table) v = v.frac();
  return SkewMap({Cylinder{depth, std::move(table)}});
}

SkewMap SkewMap::sum(const std::vector<SkewMap>& parts) {
  std::vector<Term> terms;
  for (const auto& p : parts) terms.insert(terms.end(), p.terms_.begin(), p.terms_.end());
  if (terms.empty()) terms.push_back(Constant{Rational(0)});
  return SkewMap(std::move(terms));
}

bool SkewMap::has_cylinder() const {
  for (const auto& t : terms_) {
    if (std::holds_alternative<Cylinder>(t)) return true;
  }
  return false;
}

std::size_t SkewMap::cylinder_depth() const {
  std::size_t depth = 0;
  for (const auto& t : terms_) {
    if (const auto* c = std::get_if<Cylinder>(&t)) depth = std::max(depth, c->depth);
  }
  return depth;
}

std::string SkewMap::describe() const {
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    out += std::visit(overloaded{
                          [](const LinearWinding& l) { return "linear:" + std::to_string(l.k); },
                          [](const PolyLift& p) { return "poly:" + join(p.coeffs); },
                          [](const TrigPoly& p) { return "trig:cos=" + join(p.cos_coeffs) + ";sin=" + join(p.sin_coeffs); },
                          [](const Constant& c) { return "const:" + c.value.str(); },
                          [](const Cylinder& c) { return "cylinder:" + std::to_string(c.depth) + ":" + join(c.table); },
                      },
                      terms_[i]);
  }
  return out;
}

SkewMap parse_skew_map(const std::string& text) {
  std::vector<SkewMap> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '+')) parts.push_back(parse_term(item));
  if (parts.empty()) throw DomainError("empty skew map");
  return parts.size() == 1 ? parts.front() : SkewMap::sum(parts);
}

long winding(const SkewMap& h) {
  long total = 0;
  for (const auto& t : h.terms()) {
    if (std::holds_alternative<SkewMap::Cylinder>(t)) throw DomainError("winding number is undefined off the circle");
    if (const auto* l = std::get_if<SkewMap::LinearWinding>(&t)) total += l->k;
  }
  return total;
}

Lift::Lift(SkewMap map) : map_(std::move(map)), exact_(true) {
  for (const auto& t : map_.terms()) {
    if (std::holds_alternative<SkewMap::TrigPoly>(t)) exact_ = false;
  }
}

Interval Lift::operator()(const Rational& x) const {
  const Rational r = x.frac();
  Interval acc = Interval::point(Rational(0));
  for (const auto& t : map_.terms()) {
    if (std::holds_alternative<SkewMap::LinearWinding>(t)) continue;
    acc = acc + term_lift(t, r);
  }
  return acc;
}

Rational Lift::exact(const Rational& x) const {
  if (!exact_) throw PrecisionError("trigonometric lift has no exact rational value");
  return (*this)(x).lo;
}

Lift lift(const SkewMap& h) {
  if (winding(h) != 0) throw DomainError("map with nonzero winding has no continuous lift");
  return Lift(h);
}

Rational mean(const SkewMap& h) {
  if (winding(h) != 0) throw DomainError("mean needs zero winding");
  Rational total(0);
  for (const auto& t : h.terms()) {
    std::visit(overloaded{
                   [](const SkewMap::LinearWinding&) {},
                   [&](const SkewMap::PolyLift& p) {
                     for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
                       total += p.coeffs[i] / Rational(static_cast<long>(i + 1));
                     }
                   },
                   [&](const SkewMap::TrigPoly& p) { total += p.cos_coeffs.front(); },
                   [&](const SkewMap::Constant& c) { total += c.value; },
                   [](const SkewMap::Cylinder&) {},
               },
               t);
  }
  return total;
}

Rational lipschitz_bound(const SkewMap& h) {
  Rational total(0);
  for (const auto& t : h.terms()) total += term_lipschitz(t);
  return total;
}

TorusPoint apply(const SkewMap& h, const TorusPoint& x) {
  Rational value(0);
  Rational radius(0);
  for (const auto& t : h.terms()) {
    const Interval v = term_lift(t, x.value);
    value += v.lo;
    radius += v.width();
  }
  if (!x.is_exact()) radius += lipschitz_bound(h) * x.radius;
  return TorusPoint(value, radius);
}

TorusPoint apply(const SkewMap& h, const OdometerPoint& x, const Odometer& odo) {
  Rational value(0);
  for (const auto& t : h.terms()) {
    if (const auto* c = std::get_if<SkewMap::Cylinder>(&t)) {
      if (c->table.size() != odo.cylinder_count(c->depth)) throw ShapeError("cylinder table size does not match odometer");
      value += c->table[odo.prefix_index(x, c->depth)];
    } else if (const auto* k = std::get_if<SkewMap::Constant>(&t)) {
      value += k->value;
    } else {
      throw ShapeError("only cylinder and constant maps act on an odometer base");
    }
  }
  return TorusPoint(value);
}

Interval eval_trig(const SkewMap::TrigPoly& t, const Rational& x) {
  mpfr_t arg, pi, val, xx;
  mpfr_inits2(kTrigPrecision, arg, pi, val, xx, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_q(xx, x.raw().get_mpq_t(), MPFR_RNDN);
  mpq_class q;
  Rational mid = t.cos_coeffs.front();
  Rational coeff_weight(0);
  auto accumulate = [&](long k, const Rational& coeff, bool is_cos) {
    if (coeff.is_zero()) return;
    mpfr_mul_si(arg, pi, 2 * k, MPFR_RNDN);
    mpfr_mul(arg, arg, xx, MPFR_RNDN);
    if (is_cos) {
      mpfr_cos(val, arg, MPFR_RNDN);
    } else {
      mpfr_sin(val, arg, MPFR_RNDN);
    }
    mpfr_get_q(q.get_mpq_t(), val);
    mid += coeff * Rational(q);
    coeff_weight += coeff.abs() * Rational(k + 1);
  };
  for (std::size_t k = 1; k < t.cos_coeffs.size(); ++k) accumulate(static_cast<long>(k), t.cos_coeffs[k], true);
  for (std::size_t k = 0; k < t.sin_coeffs.size(); ++k) accumulate(static_cast<long>(k + 1), t.sin_coeffs[k], false);
  mpfr_clears(arg, pi, val, xx, static_cast<mpfr_ptr>(nullptr));
  // Each cos/sin value is within (8 pi k + 1) 2^-160 <= (k + 1) 2^-150 of the truth.
  const Rational radius = coeff_weight / Rational(pow(BigInt(2), 150));
  return {mid - radius, mid + radius};
}

}  // namespace reclab
