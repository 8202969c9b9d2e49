#include "morphic_lab/families.hpp"

#include <charconv>
#include <numeric>

#include "morphic_lab/error.hpp"
#include "morphic_lab/fp_linalg.hpp"

namespace morphic_lab {

namespace {

std::string str(long long x) { return std::to_string(x); }

[[noreturn]] void out_of_range(const std::string& what) {
  throw MorphicError(ErrorCode::kParameterOutOfRange, what);
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int log2_exact(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return (1 << k) == n ? k : -1;
}

void require_prime(int p) {
  if (!fp::is_prime(p)) out_of_range(str(p) + " is not prime");
}

void require_two_power(int order, int lo, const char* family) {
  const int k = log2_exact(order);
  if (k < 0 || order < lo || order > 256) {
    out_of_range(std::string(family) + " order must be a power of 2 in [" +
                 str(lo) + ", 256], got " + str(order));
  }
}

// Groups a^i b^j (0 <= i < m, 0 <= j < q) with b a b^-1 = a^r and
// b^q = a^s; element index i + m*j.
FiniteGroup metacyclic(int m, int q, int r, int s, std::string name) {
  const int n = m * q;
  std::vector<int> rpow(q, 1);
  for (int j = 1; j < q; ++j) rpow[j] = static_cast<int>(1LL * rpow[j - 1] * r % m);
  std::vector<Element> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    const int i = x % m, j = x / m;
    for (int y = 0; y < n; ++y) {
      const int k = y % m, l = y / m;
      long long a = i + 1LL * k * rpow[j];
      int b = j + l;
      if (b >= q) {
        b -= q;
        a += s;
      }
      flat[static_cast<std::size_t>(x) * n + y] =
          static_cast<Element>(a % m) + m * b;
    }
  }
  return FiniteGroup::from_flat_table(n, std::move(flat), std::move(name));
}

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw MorphicError(ErrorCode::kParseError,
                       "bad integer '" + std::string(text) +
                           "' in family spec '" + std::string(whole) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

GroupFamilySpec parse_single(std::string_view text, std::string_view whole) {
  const auto parts = split(text, ':');
  const std::string_view tag = parts[0];
  auto need = [&](std::size_t count) {
    if (parts.size() != count) {
      throw MorphicError(ErrorCode::kParseError,
                         "family '" + std::string(tag) + "' expects " +
                             str(count - 1) + " parameter(s) in '" +
                             std::string(whole) + "'");
    }
  };
  if (tag == "abelian") {
    need(3);
    std::vector<int> exps;
    for (const auto e : split(parts[2], ',')) exps.push_back(parse_int(e, whole));
    return GroupFamilySpec::abelian(parse_int(parts[1], whole), std::move(exps));
  }
  if (tag == "heisenberg") {
    need(2);
    return GroupFamilySpec::heisenberg(parse_int(parts[1], whole));
  }
  if (tag == "dihedral" || tag == "quaternion" || tag == "semidihedral") {
    need(2);
    const int order = parse_int(parts[1], whole);
    if (tag == "dihedral") return GroupFamilySpec::dihedral(order);
    if (tag == "quaternion") return GroupFamilySpec::quaternion(order);
    return GroupFamilySpec::semidihedral(order);
  }
  if (tag == "modular" || tag == "modular_maximal_cyclic") {
    need(3);
    return GroupFamilySpec::modular_maximal_cyclic(parse_int(parts[1], whole),
                                                   parse_int(parts[2], whole));
  }
  throw MorphicError(ErrorCode::kParseError,
                     "unknown family '" + std::string(tag) + "' in '" +
                         std::string(whole) + "'");
}

}  // namespace

GroupFamilySpec GroupFamilySpec::abelian(int p, std::vector<int> exponents) {
  return {Family::kAbelian, p, std::move(exponents), {}};
}
GroupFamilySpec GroupFamilySpec::heisenberg(int p) {
  return {Family::kHeisenberg, p, {}, {}};
}
GroupFamilySpec GroupFamilySpec::dihedral(int order) {
  return {Family::kDihedral, 2, {order}, {}};
}
GroupFamilySpec GroupFamilySpec::quaternion(int order) {
  return {Family::kQuaternion, 2, {order}, {}};
}
GroupFamilySpec GroupFamilySpec::semidihedral(int order) {
  return {Family::kSemidihedral, 2, {order}, {}};
}
GroupFamilySpec GroupFamilySpec::modular_maximal_cyclic(int p, int n) {
  return {Family::kModularMaximalCyclic, p, {n}, {}};
}
GroupFamilySpec GroupFamilySpec::direct_product(GroupFamilySpec a,
                                                GroupFamilySpec b) {
  const int p = a.p == b.p ? a.p : 0;
  return {Family::kDirectProduct, p, {}, {std::move(a), std::move(b)}};
}

long long GroupFamilySpec::order() const {
  switch (family) {
    case Family::kAbelian:
      return ipow(p, std::accumulate(params.begin(), params.end(), 0));
    case Family::kHeisenberg:
      return ipow(p, 3);
    case Family::kDihedral:
    case Family::kQuaternion:
    case Family::kSemidihedral:
      return params.empty() ? 0 : params[0];
    case Family::kModularMaximalCyclic:
      return params.empty() ? 0 : ipow(p, params[0]);
    case Family::kDirectProduct:
      return factors.size() == 2 ? factors[0].order() * factors[1].order() : 0;
  }
  return 0;
}

std::string GroupFamilySpec::name() const {
  auto list = [this] {
    std::string s = "[";
    for (std::size_t i = 0; i < params.size(); ++i) {
      s += (i ? "," : "") + str(params[i]);
    }
    return s + "]";
  };
  switch (family) {
    case Family::kAbelian: return "abelian(" + str(p) + "," + list() + ")";
    case Family::kHeisenberg: return "heisenberg(" + str(p) + ")";
    case Family::kDihedral: return "dihedral(" + str(order()) + ")";
    case Family::kQuaternion: return "quaternion(" + str(order()) + ")";
    case Family::kSemidihedral: return "semidihedral(" + str(order()) + ")";
    case Family::kModularMaximalCyclic:
      return "modular_maximal_cyclic(" + str(p) + "," + str(params.at(0)) + ")";
    case Family::kDirectProduct:
      return factors.at(0).name() + " x " + factors.at(1).name();
  }
  return "?";
}

std::string GroupFamilySpec::to_spec_string() const {
  switch (family) {
    case Family::kAbelian: {
      std::string s = "abelian:" + str(p) + ":";
      for (std::size_t i = 0; i < params.size(); ++i) {
        s += (i ? "," : "") + str(params[i]);
      }
      return s;
    }
    case Family::kHeisenberg: return "heisenberg:" + str(p);
    case Family::kDihedral: return "dihedral:" + str(order());
    case Family::kQuaternion: return "quaternion:" + str(order());
    case Family::kSemidihedral: return "semidihedral:" + str(order());
    case Family::kModularMaximalCyclic:
      return "modular:" + str(p) + ":" + str(params.at(0));
    case Family::kDirectProduct:
      return factors.at(0).to_spec_string() + "*" +
             factors.at(1).to_spec_string();
  }
  return "";
}

GroupFamilySpec parse_family_spec(std::string_view text) {
  const auto parts = split(text, '*');
  GroupFamilySpec spec = parse_single(parts[0], text);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    spec = GroupFamilySpec::direct_product(std::move(spec),
                                           parse_single(parts[i], text));
  }
  return spec;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           std::string name) {
  const long long order = 1LL * a.order() * b.order();
  if (order > kMaxGroupOrder) {
    out_of_range("direct product order " + str(order) + " exceeds " +
                 str(kMaxGroupOrder));
  }
  const int na = a.order(), n = static_cast<int>(order);
  std::vector<Element> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      flat[static_cast<std::size_t>(x) * n + y] =
          a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
    }
  }
  return FiniteGroup::from_flat_table(n, std::move(flat), std::move(name));
}

FiniteGroup make_family(const GroupFamilySpec& spec) {
  const std::string name = spec.name();
  switch (spec.family) {
    case Family::kAbelian: {
      require_prime(spec.p);
      long long order = 1;
      std::vector<int> moduli;
      for (const int e : spec.params) {
        if (e < 1) out_of_range("abelian exponents must be >= 1");
        moduli.push_back(static_cast<int>(ipow(spec.p, e)));
        order *= moduli.back();
        if (order > kMaxGroupOrder) {
          out_of_range("abelian order exceeds " + str(kMaxGroupOrder));
        }
      }
      const int n = static_cast<int>(order);
      std::vector<Element> flat(static_cast<std::size_t>(n) * n);
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          int xr = x, yr = y, out = 0, weight = 1;
          for (const int m : moduli) {
            out += weight * ((xr % m + yr % m) % m);
            xr /= m;
            yr /= m;
            weight *= m;
          }
          flat[static_cast<std::size_t>(x) * n + y] = out;
        }
      }
      return FiniteGroup::from_flat_table(n, std::move(flat), name);
    }
    case Family::kHeisenberg: {
      const int p = spec.p;
      require_prime(p);
      if (p == 2) {
        throw MorphicError(ErrorCode::kOddPrimeRequired,
                           "heisenberg(p) needs an odd prime");
      }
      if (p > 7) out_of_range("heisenberg(p) needs p <= 7");
      const int n = p * p * p;
      std::vector<Element> flat(static_cast<std::size_t>(n) * n);
      for (int x = 0; x < n; ++x) {
        const int a = x % p, b = (x / p) % p, c = x / (p * p);
        for (int y = 0; y < n; ++y) {
          const int a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
          flat[static_cast<std::size_t>(x) * n + y] =
              (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
        }
      }
      return FiniteGroup::from_flat_table(n, std::move(flat), name);
    }
    case Family::kDihedral: {
      const int order = static_cast<int>(spec.order());
      require_two_power(order, 4, "dihedral");
      const int m = order / 2;
      return metacyclic(m, 2, m - 1, 0, name);
    }
    case Family::kQuaternion: {
      const int order = static_cast<int>(spec.order());
      require_two_power(order, 8, "quaternion");
      const int m = order / 2;
      return metacyclic(m, 2, m - 1, m / 2, name);
    }
    case Family::kSemidihedral: {
      const int order = static_cast<int>(spec.order());
      require_two_power(order, 16, "semidihedral");
      const int m = order / 2;
      return metacyclic(m, 2, m / 2 - 1, 0, name);
    }
    case Family::kModularMaximalCyclic: {
      const int p = spec.p;
      require_prime(p);
      const int n = spec.params.at(0);
      if (n < 3 || spec.order() > 2401) {
        out_of_range("modular_maximal_cyclic(p, n) needs n >= 3 and p^n <= 2401");
      }
      const int m = static_cast<int>(ipow(p, n - 1));
      // a^b = b^-1 a b = a^(1 + p^(n-2)); we need r with b a b^-1 = a^r.
      const int conj = static_cast<int>((1 + ipow(p, n - 2)) % m);
      int r = 1;
      while (1LL * r * conj % m != 1) ++r;
      return metacyclic(m, p, r, 0, name);
    }
    case Family::kDirectProduct: {
      if (spec.factors.size() != 2) out_of_range("direct product needs two factors");
      if (spec.order() > kMaxGroupOrder) {
        out_of_range("direct product order " + str(spec.order()) +
                     " exceeds " + str(kMaxGroupOrder));
      }
      return direct_product(make_family(spec.factors[0]),
                            make_family(spec.factors[1]), name);
    }
  }
  out_of_range("unknown family");
}

}  // namespace morphic_lab
