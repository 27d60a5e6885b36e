#include "reclab/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>

#include "reclab/parallel.hpp"

namespace reclab {

namespace {

BigInt big(std::uint64_t n) { return BigInt(static_cast<unsigned long>(n)); }

// Fixed-size bitset over positions 0..size-1.
class Bits {
 public:
  explicit Bits(std::uint64_t size) : size_(size), words_((size + 63) / 64 + 1, 0) {}

  void set(std::uint64_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool get(std::uint64_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  /// Is there a with this[a] and other[a + d]?
  bool overlaps_shifted(const Bits& other, std::uint64_t d) const {
    const std::uint64_t q = d / 64, r = d % 64;
    const std::size_t n = words_.size();
    for (std::size_t w = 0; w + q < n; ++w) {
      std::uint64_t shifted = other.words_[w + q] >> r;
      if (r != 0 && w + q + 1 < n) shifted |= other.words_[w + q + 1] << (64 - r);
      if (words_[w] & shifted) return true;
    }
    return false;
  }

 private:
  std::uint64_t size_;
  std::vector<std::uint64_t> words_;
};

Bits to_bits(const WindowSet& s) {
  Bits b(s.horizon() + 1);
  for (auto v : s.members()) b.set(v);
  return b;
}

// ceil(eps * scale) for eps > 0; ||v/scale|| < eps iff min(v, scale - v) < this.
BigInt ceil_scaled(const Rational& eps, const BigInt& scale) {
  BigInt out;
  const BigInt num = eps.num() * scale;
  const BigInt den = eps.den();
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Rows of (index, value-text); skips an optional non-numeric header and blank lines.
std::vector<std::pair<std::uint64_t, std::string>> read_rows(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("CSV row needs 'index,value': " + line);
    const std::string idx = trim(line.substr(0, comma));
    if (first && !idx.empty() && !std::isdigit(static_cast<unsigned char>(idx[0]))) {
      first = false;
      continue;
    }
    first = false;
    rows.emplace_back(parse_bigint(idx).get_ui(), trim(line.substr(comma + 1)));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

WindowSet diff_set(const WindowSet& a) {
  const Bits bits = to_bits(a);
  const std::uint64_t N = a.horizon();
  const auto hit = parallel_map<char>(N, [&](std::size_t i) {
    const std::uint64_t d = i + 1;
    return static_cast<char>(d < N && bits.overlaps_shifted(bits, d));
  });
  std::vector<std::uint64_t> members;
  for (std::uint64_t i = 0; i < N; ++i) {
    if (hit[i]) members.push_back(i + 1);
  }
  return WindowSet(N, std::move(members));
}

void Coloring::validate() const {
  if (colors < 1) throw DomainError("coloring needs r >= 1");
  if (color.size() != horizon) throw DomainError("coloring must be total on the window");
  for (auto c : color) {
    if (c < 1 || c > colors) throw DomainError("color outside [1, r]");
  }
}

std::vector<WindowSet> Coloring::cells() const {
  validate();
  std::vector<std::vector<std::uint64_t>> members(colors);
  for (std::uint64_t n = 1; n <= horizon; ++n) members[color[n - 1] - 1].push_back(n);
  std::vector<WindowSet> out;
  for (auto& m : members) out.emplace_back(horizon, std::move(m));
  return out;
}

Dichotomy two_color_dichotomy(const Coloring& c) {
  if (c.colors != 2) throw DomainError("the dichotomy needs exactly two colors");
  const auto cells = c.cells();
  const Bits a1 = to_bits(cells[0]), a2 = to_bits(cells[1]);
  const std::uint64_t half = c.horizon / 2;
  auto in_a1 = [&](std::uint64_t n) { return a1.overlaps_shifted(a1, n); };
  auto in_a2 = [&](std::uint64_t n) { return a2.overlaps_shifted(a2, n); };
  Dichotomy out;
  for (std::uint64_t n = 1; n <= half; ++n) {
    if (!in_a1(n) && !in_a2(n)) {
      out.witness = n;
      out.period = 2 * n;
      break;
    }
  }
  if (out.witness == 0) return out;
  out.kind = Dichotomy::Kind::Period;
  for (std::uint64_t n = out.period; n <= half; n += out.period) {
    if (!in_a1(n) || !in_a2(n)) {
      out.kind = Dichotomy::Kind::WindowArtifact;
      break;
    }
  }
  return out;
}

void CyclicSeq::validate() const {
  if (modulus < 2) throw DomainError("cyclic sequence needs k >= 2");
  for (auto v : values) {
    if (v >= modulus) throw DomainError("cyclic sequence values must be reduced mod k");
  }
}

WindowSet zero_sum_lengths(const CyclicSeq& f) {
  f.validate();
  const std::uint64_t N = f.values.size();
  // Positions 0..N of each prefix-sum residue.
  std::vector<std::vector<std::uint64_t>> positions(f.modulus);
  std::uint64_t g = 0;
  positions[0].push_back(0);
  for (std::uint64_t n = 0; n < N; ++n) {
    g = (g + f.values[n]) % f.modulus;
    positions[g].push_back(n + 1);
  }
  std::vector<char> hit(N + 1, 0);
  for (const auto& pos : positions) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) hit[pos[j] - pos[i]] = 1;
    }
  }
  std::vector<std::uint64_t> members;
  for (std::uint64_t m = 1; m <= N; ++m) {
    if (hit[m]) members.push_back(m);
  }
  return WindowSet(N, std::move(members));
}

WindowSet eps_sum_lengths(std::span<const Rational> f, const Rational& eps) {
  const std::uint64_t N = f.size();
  std::vector<Rational> prefix(N + 1);
  for (std::uint64_t n = 0; n < N; ++n) prefix[n + 1] = (prefix[n] + f[n]).frac();
  const auto hit = parallel_map<char>(N, [&](std::size_t i) {
    const std::uint64_t m = i + 1;
    for (std::uint64_t n = 0; n + m <= N; ++n) {
      if (norm(prefix[n + m] - prefix[n]) < eps) return char{1};
    }
    return char{0};
  });
  std::vector<std::uint64_t> members;
  for (std::uint64_t i = 0; i < N; ++i) {
    if (hit[i]) members.push_back(i + 1);
  }
  return WindowSet(N, std::move(members));
}

Rational phi_binary(std::uint64_t n) {
  Rational out(0);
  for (unsigned i = 0; n != 0; ++i, n >>= 1) {
    if (n & 1U) out += Rational(BigInt(1), pow(BigInt(2), i));
  }
  return out;
}

Example48Result example48_window(const Rational& eps, std::uint64_t horizon) {
  if (eps.sign() <= 0 || eps >= Rational(1, 2)) throw DomainError("eps must lie in (0, 1/2)");
  // Scale by 2^K with 2^K > N so that phi(j) 2^K is an integer for j <= N.
  const unsigned K = static_cast<unsigned>(std::bit_width(horizon)) + 1;
  if (K > 62) throw DomainError("horizon too large");
  const std::uint64_t M = std::uint64_t{1} << K;
  const std::uint64_t threshold = ceil_scaled(eps, big(M)).get_ui();
  std::vector<std::uint64_t> members;
  std::uint64_t sum = 0;
  for (std::uint64_t j = 1; j <= horizon; ++j) {
    std::uint64_t scaled = 0;
    for (unsigned i = 0; (j >> i) != 0; ++i) {
      if ((j >> i) & 1U) scaled += M >> i;
    }
    sum = (sum + scaled) & (M - 1);
    if (std::min(sum, M - sum) < threshold) members.push_back(j);
  }
  Example48Result out{WindowSet(horizon, std::move(members)), std::nullopt, {}};
  out.max_gap = max_gap(out.a);
  out.diff = diff_set(out.a);
  return out;
}

WindowSet doubling_orbit_set(const Rational& alpha, const Rational& eps, std::uint64_t horizon) {
  const Rational a = alpha.frac();
  if (!a.den().fits_ulong_p() || a.den() > BigInt(1UL << 62)) throw DomainError("denominator too large");
  const std::uint64_t q = a.den().get_ui();
  const std::uint64_t threshold = eps.sign() <= 0 ? 0 : ceil_scaled(min(eps, Rational(1)), big(q)).get_ui();
  // Orbit r_n = 2^n p mod q until the first repeat.
  std::vector<std::uint64_t> orbit;
  std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
  std::uint64_t r = a.num().get_ui();
  while (!first_seen.count(r)) {
    first_seen[r] = orbit.size();
    orbit.push_back(r);
    r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * 2) % q);
  }
  const std::uint64_t mu = first_seen[r];
  const std::uint64_t lambda = orbit.size() - mu;
  auto at = [&](std::uint64_t n) { return n < orbit.size() ? orbit[n] : orbit[mu + (n - mu) % lambda]; };
  auto close = [&](std::uint64_t m) {
    for (std::uint64_t n = 0; n < orbit.size(); ++n) {
      const std::uint64_t d = (at(n + m) + q - at(n)) % q;
      if (std::min(d, q - d) < threshold) return true;
    }
    return false;
  };
  // For m >= mu + lambda the verdict repeats with period lambda.
  std::vector<char> verdict(horizon + 1, 0);
  for (std::uint64_t m = 1; m <= horizon; ++m) {
    verdict[m] = (m >= mu + lambda + 1 && m > lambda) ? verdict[m - lambda] : static_cast<char>(close(m));
  }
  std::vector<std::uint64_t> members;
  for (std::uint64_t m = 1; m <= horizon; ++m) {
    if (verdict[m]) members.push_back(m);
  }
  return WindowSet(horizon, std::move(members));
}

ColorabilityResult gr_colorability(const WindowSet& r_set, std::uint64_t horizon, std::uint32_t colors,
                                   std::uint64_t node_budget) {
  if (colors < 1) throw DomainError("need at least one color");
  ColorabilityResult out;
  if (horizon == 0) {
    out.status = ColorabilityResult::Status::Colorable;
    return out;
  }
  const auto& diffs = r_set.members();
  std::vector<std::uint32_t> color(horizon + 1, 0);
  auto ok = [&](std::uint64_t v, std::uint32_t c) {
    for (auto d : diffs) {
      if (d >= v) break;
      if (color[v - d] == c) return false;
    }
    return true;
  };
  std::uint64_t v = 1;
  while (v >= 1 && v <= horizon) {
    const std::uint32_t limit = v == 1 ? 1 : colors;
    std::uint32_t c = color[v] + 1;
    while (c <= limit && !ok(v, c)) ++c;
    if (++out.nodes > node_budget) {
      out.status = ColorabilityResult::Status::BudgetExceeded;
      return out;
    }
    if (c <= limit) {
      color[v] = c;
      ++v;
    } else {
      color[v] = 0;
      --v;
    }
  }
  if (v == 0) {
    out.status = ColorabilityResult::Status::NotColorable;
    return out;
  }
  out.status = ColorabilityResult::Status::Colorable;
  out.coloring.assign(color.begin() + 1, color.end());
  return out;
}

Coloring load_coloring_csv(std::istream& in) {
  const auto rows = read_rows(in);
  Coloring c;
  c.horizon = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i + 1) throw DomainError("coloring indices must be 1..N without gaps");
    const auto v = static_cast<std::uint32_t>(parse_bigint(rows[i].second).get_ui());
    c.color.push_back(v);
    c.colors = std::max(c.colors, v);
  }
  c.validate();
  return c;
}

CyclicSeq load_cyclic_csv(std::istream& in, std::uint64_t modulus) {
  const auto rows = read_rows(in);
  CyclicSeq f{modulus, {}};
  if (modulus < 2) throw DomainError("cyclic sequence needs k >= 2");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) throw DomainError("sequence indices must be 0..N-1 without gaps");
    BigInt v = parse_bigint(rows[i].second);
    mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), modulus);
    f.values.push_back(v.get_ui());
  }
  return f;
}

std::vector<Rational> load_rational_csv(std::istream& in) {
  const auto rows = read_rows(in);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) throw DomainError("sequence indices must be 0..N-1 without gaps");
    out.push_back(Rational::parse(rows[i].second));
  }
  return out;
}

}  // namespace reclab
