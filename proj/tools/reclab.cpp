#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reclab/combinatorics.hpp"
#include "reclab/counterexample.hpp"
#include "reclab/dynsys.hpp"
#include "reclab/json_io.hpp"
#include "reclab/recurrence.hpp"

using namespace reclab;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitCertification = 3;
constexpr int kExitInvariant = 4;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;
};

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

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return in;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split(s, ';')) out.push_back(Rational::parse(item));
  return out;
}

std::vector<std::uint64_t> parse_uints(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_bigint(item).get_ui());
  return out;
}

json rationals_json(const std::vector<Rational>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(to_json(x));
  return arr;
}

json torus_json(const TorusPoint& t) {
  if (t.is_exact()) return to_json(t.value);
  return json{{"value", to_json(t.value)}, {"radius", to_json(t.radius)}};
}

json point_json(const ProductPoint& p) {
  json j;
  if (const auto* x = std::get_if<std::vector<TorusPoint>>(&p.base)) {
    json b = json::array();
    for (const auto& t : *x) b.push_back(torus_json(t));
    j["base"] = b;
  } else {
    j["base"] = std::get<OdometerPoint>(p.base).digits;
  }
  json f = json::array();
  for (const auto& t : p.fibers) f.push_back(torus_json(t));
  j["fibers"] = f;
  return j;
}

void emit(const Common& c, json doc) {
  doc["seed"] = c.seed;
  const std::string text = doc.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw DomainError("cannot write '" + c.out + "'");
    f << text;
  }
}

template <class W>
void emit_csv(const Common& c, const W& window) {
  if (c.csv.empty()) return;
  std::ofstream f(c.csv);
  if (!f) throw DomainError("cannot write '" + c.csv + "'");
  write_window_csv(f, window);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "random seed recorded in the output");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--csv", c.csv, "optional CSV table of the window");
}

// Flat `key = value` config: `command` names the subcommand, every other key
// becomes `--key value` unless the command line already sets it.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const std::set<std::string>& commands) {
  std::vector<std::string> rest;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return rest;
  std::vector<std::pair<std::string, std::string>> kv;
  std::string command;
  std::stringstream ss(read_file(config_path));
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "command") {
      command = value;
    } else {
      kv.emplace_back(key, value);
    }
  }
  bool has_command = false;
  for (const auto& a : rest) has_command |= commands.count(a) > 0;
  if (!has_command) {
    if (command.empty()) throw DomainError("config needs a 'command' key");
    rest.insert(rest.begin(), command);
  }
  for (const auto& [key, value] : kv) {
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : rest) given |= a == flag || a.rfind(flag + "=", 0) == 0;
    if (!given) {
      rest.push_back(flag);
      rest.push_back(value);
    }
  }
  return rest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recurrence and return-time experiments"};
  app.require_subcommand(1);
  Common common;

  // returns-window
  auto* rw = app.add_subcommand("returns-window", "In/Out/Unknown partition of the eps-return times");
  std::string rw_system, rw_base = "rotation", rw_alpha, rw_bases, rw_h1, rw_fibers, rw_eps;
  std::uint64_t rw_N = 0, rw_grid = 64, rw_power = 1;
  rw->add_option("--system", rw_system, "tower description file");
  rw->add_option("--base", rw_base);
  rw->add_option("--alpha", rw_alpha, "';'-separated rotation coordinates");
  rw->add_option("--bases", rw_bases, "odometer bases, comma separated");
  rw->add_option("--h1", rw_h1);
  rw->add_option("--fibers", rw_fibers);
  rw->add_option("--eps", rw_eps)->required();
  rw->add_option("--N", rw_N)->required();
  rw->add_option("--grid", rw_grid);
  rw->add_option("--power", rw_power);
  add_common(rw, common);

  // bohr-window
  auto* bw = app.add_subcommand("bohr-window", "{ n <= N : sum_j ||n alpha_j|| < delta }");
  std::string bw_alpha, bw_delta;
  std::uint64_t bw_N = 0;
  bw->add_option("--alpha", bw_alpha)->required();
  bw->add_option("--delta", bw_delta)->required();
  bw->add_option("--N", bw_N)->required();
  add_common(bw, common);

  // thmb-certify / thmb-spot
  std::size_t tb_depth = 3, tb_index = 2, tb_samples = 1000;
  std::string tb_a1 = "3", tb_delta = "1/145";
  std::uint64_t tb_cap = 64;
  auto* tc = app.add_subcommand("thmb-certify", "exact inequality chain for one selected index");
  auto* ts = app.add_subcommand("thmb-spot", "direct summation spot check of the gap");
  for (auto* s : {tc, ts}) {
    s->add_option("--depth", tb_depth);
    s->add_option("--a1", tb_a1);
    s->add_option("--index", tb_index);
    s->add_option("--delta", tb_delta);
    s->add_option("--beta-cap", tb_cap, "denominator cap of the beta search");
    add_common(s, common);
  }
  ts->add_option("--samples", tb_samples);

  // riemann
  auto* rm = app.add_subcommand("riemann", "closed-form Riemann sum of the quartic");
  std::uint64_t rm_n = 1;
  std::string rm_x = "0";
  rm->add_option("--n", rm_n)->required();
  rm->add_option("--x", rm_x);
  add_common(rm, common);

  // two-color
  auto* tw = app.add_subcommand("two-color", "difference-set dichotomy for a 2-coloring");
  std::string tw_input;
  tw->add_option("--coloring", tw_input, "CSV n,color for n = 1..N")->required();
  add_common(tw, common);

  // zero-sum / eps-sum
  auto* zs = app.add_subcommand("zero-sum", "lengths of zero-sum blocks of a Z/kZ sequence");
  std::string zs_input;
  std::uint64_t zs_k = 2;
  zs->add_option("--input", zs_input, "CSV n,value for n = 0..N-1")->required();
  zs->add_option("--k", zs_k)->required();
  add_common(zs, common);

  auto* es = app.add_subcommand("eps-sum", "lengths of eps-small blocks of a torus sequence");
  std::string es_input, es_eps;
  es->add_option("--input", es_input, "CSV n,p/q for n = 0..N-1")->required();
  es->add_option("--eps", es_eps)->required();
  add_common(es, common);

  // example48
  auto* ex = app.add_subcommand("example48", "binary-digit sum window and its difference set");
  std::string ex_eps = "1/10";
  std::uint64_t ex_N = 10000;
  ex->add_option("--eps", ex_eps);
  ex->add_option("--N", ex_N);
  add_common(ex, common);

  // doubling
  auto* db = app.add_subcommand("doubling", "eps-return lengths along the doubling orbit");
  std::string db_alpha, db_eps;
  std::uint64_t db_N = 0;
  db->add_option("--alpha", db_alpha)->required();
  db->add_option("--eps", db_eps)->required();
  db->add_option("--N", db_N)->required();
  add_common(db, common);

  // gr-color
  auto* gr = app.add_subcommand("gr-color", "r-colorability of the difference graph on {1..N}");
  std::string gr_R;
  std::uint64_t gr_N = 0, gr_budget = 10'000'000;
  std::uint32_t gr_r = 2;
  gr->add_option("--R", gr_R, "edge differences, comma separated")->required();
  gr->add_option("--N", gr_N)->required();
  gr->add_option("--r", gr_r);
  gr->add_option("--budget", gr_budget);
  add_common(gr, common);

  // iterated-skew-check
  auto* is = app.add_subcommand("iterated-skew-check", "closed form against direct iteration");
  std::string is_alpha, is_h = "poly:-1/30,0,1,-2,1", is_t;
  std::size_t is_k = 2;
  std::uint64_t is_n = 200;
  is->add_option("--alpha", is_alpha)->required();
  is->add_option("--h1", is_h);
  is->add_option("--k", is_k);
  is->add_option("--n-max", is_n);
  is->add_option("--t", is_t, "';'-separated initial fibers (random from the seed if omitted)");
  add_common(is, common);

  // prop32
  auto* pp = app.add_subcommand("prop32", "block sums near the mean along almost periods");
  std::string pp_alpha, pp_x0 = "0", pp_eps, pp_h = "poly:-1/30,0,1,-2,1";
  std::uint64_t pp_N = 0;
  pp->add_option("--alpha", pp_alpha)->required();
  pp->add_option("--x0", pp_x0);
  pp->add_option("--eps", pp_eps)->required();
  pp->add_option("--N", pp_N)->required();
  pp->add_option("--h1", pp_h);
  add_common(pp, common);

  std::set<std::string> commands;
  for (const auto* s : app.get_subcommands({})) commands.insert(s->get_name());

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args, commands);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSchema;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  }

  try {
    if (rw->parsed()) {
      std::string text;
      if (!rw_system.empty()) {
        text = read_file(rw_system);
      } else {
        text = "base = " + rw_base + "\n";
        if (!rw_alpha.empty()) text += "alpha = " + rw_alpha + "\n";
        if (!rw_bases.empty()) text += "bases = " + rw_bases + "\n";
        if (!rw_h1.empty()) text += "h1 = " + rw_h1 + "\n";
        if (!rw_fibers.empty()) text += "fibers = " + rw_fibers + "\n";
      }
      const SkewTower tower = parse_tower_config(text);
      const Rational eps = Rational::parse(rw_eps);
      const ReturnWindow w = return_window(tower, eps, rw_N, {rw_grid, rw_power});
      json doc;
      doc["command"] = "returns-window";
      doc["system"] = text;
      doc["eps"] = to_json(eps);
      doc["grid"] = rw_grid;
      doc["power"] = rw_power;
      doc["metric"] = "l1";
      doc["window"] = window_json(w);
      emit(common, doc);
      emit_csv(common, w);
    } else if (bw->parsed()) {
      BohrSpec spec;
      for (const auto& a : split(bw_alpha, ';')) spec.alpha.push_back(parse_real_spec(a));
      spec.delta = Rational::parse(bw_delta);
      const WindowSet s = bohr_window(spec, bw_N);
      json doc;
      doc["command"] = "bohr-window";
      json alpha = json::array();
      for (const auto& a : spec.alpha) alpha.push_back(describe(a));
      doc["alpha"] = alpha;
      doc["delta"] = to_json(spec.delta);
      doc["metric"] = "l1";
      doc["window"] = window_json(s);
      emit(common, doc);
      emit_csv(common, s);
    } else if (tc->parsed() || ts->parsed()) {
      const TheoremBConfig config =
          make_theoremB_config(tb_depth, parse_bigint(tb_a1), Rational::parse(tb_delta), tb_cap);
      json doc;
      doc["config"] = to_json(config);
      if (tc->parsed()) {
        const GapCertificate cert = certify_gap(config, tb_index);
        doc = json{{"command", "thmb-certify"}, {"config", doc["config"]}, {"transcript", to_json(cert)}};
        emit(common, doc);
        if (!cert.success()) return kExitCertification;
      } else {
        const SpotCheckReport r = spot_check_gap(config, tb_index, tb_samples, common.seed);
        const bool above = r.minimum && *r.minimum > Rational(1, 6);
        doc = json{{"command", "thmb-spot"}, {"config", doc["config"]}, {"index", tb_index},
                   {"report", to_json(r)}, {"exceeds_one_sixth", above}};
        emit(common, doc);
        if (!above) return kExitCertification;
      }
    } else if (rm->parsed()) {
      const Rational x = Rational::parse(rm_x);
      json doc;
      doc["command"] = "riemann";
      doc["n"] = rm_n;
      doc["x"] = to_json(x);
      doc["value"] = to_json(riemann_closed_form(rm_n, x));
      doc["bound"] = rm_n >= 4 ? to_json(riemann_bound(rm_n)) : json(nullptr);
      emit(common, doc);
    } else if (tw->parsed()) {
      auto in = open_input(tw_input);
      const Coloring c = load_coloring_csv(in);
      json doc;
      doc["command"] = "two-color";
      doc["N"] = c.horizon;
      doc["dichotomy"] = to_json(two_color_dichotomy(c));
      emit(common, doc);
    } else if (zs->parsed()) {
      auto in = open_input(zs_input);
      const WindowSet s = zero_sum_lengths(load_cyclic_csv(in, zs_k));
      json doc;
      doc["command"] = "zero-sum";
      doc["k"] = zs_k;
      doc["window"] = window_json(s);
      emit(common, doc);
      emit_csv(common, s);
    } else if (es->parsed()) {
      auto in = open_input(es_input);
      const auto f = load_rational_csv(in);
      const Rational eps = Rational::parse(es_eps);
      const WindowSet s = eps_sum_lengths(f, eps);
      json doc;
      doc["command"] = "eps-sum";
      doc["eps"] = to_json(eps);
      doc["window"] = window_json(s);
      emit(common, doc);
      emit_csv(common, s);
    } else if (ex->parsed()) {
      const Rational eps = Rational::parse(ex_eps);
      const Example48Result r = example48_window(eps, ex_N);
      json doc;
      doc["command"] = "example48";
      doc["eps"] = to_json(eps);
      doc["window"] = window_json(r.a);
      doc["diff"] = window_json(r.diff);
      emit(common, doc);
      emit_csv(common, r.a);
    } else if (db->parsed()) {
      const Rational alpha = Rational::parse(db_alpha), eps = Rational::parse(db_eps);
      const WindowSet s = doubling_orbit_set(alpha, eps, db_N);
      json doc;
      doc["command"] = "doubling";
      doc["alpha"] = to_json(alpha);
      doc["eps"] = to_json(eps);
      doc["window"] = window_json(s);
      emit(common, doc);
      emit_csv(common, s);
    } else if (gr->parsed()) {
      const WindowSet R(gr_N, parse_uints(gr_R));
      const ColorabilityResult r = gr_colorability(R, gr_N, gr_r, gr_budget);
      json doc;
      doc["command"] = "gr-color";
      doc["R"] = R.members();
      doc["N"] = gr_N;
      doc["r"] = gr_r;
      doc["result"] = to_json(r);
      emit(common, doc);
    } else if (is->parsed()) {
      TorusRotation rot;
      for (const auto& a : parse_rationals(is_alpha)) rot.alpha.push_back(a.frac());
      const BaseSystem base = rot;
      const SkewMap h = parse_skew_map(is_h);
      std::vector<Rational> t;
      if (!is_t.empty()) {
        t = parse_rationals(is_t);
      } else {
        std::mt19937_64 rng(common.seed);
        for (std::size_t j = 0; j < is_k; ++j) {
          const long den = 1 + static_cast<long>(rng() % 64);
          t.push_back(Rational(static_cast<long>(rng() % den), den));
        }
      }
      if (t.size() != is_k) throw ShapeError("--t needs exactly k entries");
      IteratedSkewState state{base_origin(base), {}};
      for (const auto& v : t) state.t.emplace_back(v);
      const auto closed = iterated_id_closed_form_series(base, h, state, is_n);
      const SkewTower tower = iterated_id_tower(base, h, is_k);
      ProductPoint p{state.x, state.t};
      std::uint64_t mismatches = 0;
      json first = nullptr;
      for (std::uint64_t n = 0; n <= is_n; ++n) {
        if (!(closed[n] == p)) {
          if (mismatches++ == 0) first = json{{"n", n}, {"closed_form", point_json(closed[n])}, {"direct", point_json(p)}};
        }
        p = tower_step(tower, p);
      }
      json doc;
      doc["command"] = "iterated-skew-check";
      doc["alpha"] = rationals_json(parse_rationals(is_alpha));
      doc["h"] = h.describe();
      doc["t"] = rationals_json(t);
      doc["compared"] = is_n + 1;
      doc["mismatches"] = mismatches;
      doc["first_mismatch"] = first;
      emit(common, doc);
      if (mismatches != 0) return kExitInvariant;
    } else if (pp->parsed()) {
      const Rational alpha = Rational::parse(pp_alpha).frac(), x0 = Rational::parse(pp_x0);
      const Rational eps = Rational::parse(pp_eps);
      const Lift H = lift(parse_skew_map(pp_h));
      std::vector<Rational> f;
      for (std::uint64_t n = 0; n <= pp_N; ++n) f.push_back(H.exact((x0 + alpha * Rational(BigInt(n))).frac()));
      // Mean of the periodic sequence: the average over one period.
      const std::uint64_t period = alpha.den().get_ui();
      Rational beta(0);
      for (std::uint64_t n = 0; n < period; ++n) beta += H.exact((x0 + alpha * Rational(BigInt(n))).frac());
      beta /= Rational(BigInt(period));
      const WindowSet ap = almost_periods(f, eps / Rational(2));
      json witnesses = json::array();
      std::uint64_t missing = 0;
      for (auto m : ap.members()) {
        const auto w = prop32_witness(f, m, beta, eps);
        witnesses.push_back(json{{"m", m}, {"n", w ? json(*w) : json(nullptr)}});
        missing += !w;
      }
      json doc;
      doc["command"] = "prop32";
      doc["alpha"] = to_json(alpha);
      doc["x0"] = to_json(x0);
      doc["eps"] = to_json(eps);
      doc["beta"] = to_json(beta);
      doc["almost_periods"] = window_json(ap);
      doc["witnesses"] = witnesses;
      doc["missing"] = missing;
      emit(common, doc);
      if (missing != 0) return kExitInvariant;
    }
  } catch (const PrecisionError& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kExitCertification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
