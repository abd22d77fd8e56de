#include "e6iso/wittforms.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

namespace e6iso {

namespace {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// a·b modulo squares, for squarefree a and b.
mpz_class sq_mul(const mpz_class& a, const mpz_class& b) {
  mpz_class g = gcd(a, b);
  return mpz_class(a * b / (g * g));
}

int legendre(const mpz_class& a, unsigned long p) {
  mpz_class r = a % mpz_class(p);
  if (r < 0) r += p;
  mpz_class pp = p;
  return mpz_legendre(r.get_mpz_t(), pp.get_mpz_t());
}

unsigned long mod_small(const mpz_class& a, unsigned long m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
  return r.get_ui();
}

bool local_square(const mpz_class& m, unsigned long p) {
  if (p == 2) return mod_small(m, 8) == 1;
  return mod_small(m, p) != 0 && legendre(m, p) == 1;
}

std::vector<unsigned long> prime_factors(mpz_class n) {
  std::vector<unsigned long> out;
  n = abs(n);
  for (unsigned long p = 2; n > 1; ++p) {
    if (mpz_class(p) * p > n) {
      if (!n.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "unit too large to factor");
      out.push_back(n.get_ui());
      break;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.push_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  return out;
}

long signature_of(const std::vector<mpz_class>& u) {
  long s = 0;
  for (const auto& a : u) s += sgn(a);
  return s;
}

// Milnor's exact sequence: zero in W(Q) iff signature 0 and every second
// residue vanishes.
bool q_witt_zero(const std::vector<mpz_class>& u) {
  if (signature_of(u) != 0) return false;
  for (unsigned long p : detail::bad_primes(u)) {
    std::vector<mpz_class> res;
    for (const auto& a : u)
      if (mpz_divisible_ui_p(a.get_mpz_t(), p)) res.push_back(a / p);
    if (p == 2) {
      if (res.size() % 2) return false;
      continue;
    }
    if (res.size() % 2) return false;
    mpz_class d = res.size() / 2 % 2 ? -1 : 1;
    for (const auto& r : res) d *= r;
    if (legendre(d, p) != 1) return false;
  }
  return true;
}

std::size_t q_aniso_dim(const std::vector<mpz_class>& u) {
  std::size_t m = static_cast<std::size_t>(std::labs(signature_of(u)));
  for (unsigned long p : detail::bad_primes(u)) m = std::max(m, detail::local_aniso_dim(u, p));
  return m;
}

// (-1)^{n(n-1)/2} det, modulo squares.
mpz_class signed_disc(const std::vector<mpz_class>& u) {
  mpz_class d = 1;
  for (const auto& a : u) d = sq_mul(d, a);
  std::size_t n = u.size();
  if ((n * (n - 1) / 2) % 2) d = -d;
  return d;
}

std::vector<mpz_class> candidate_values(const std::vector<mpz_class>& u) {
  auto S = detail::bad_primes(u);
  std::vector<mpz_class> base{1};
  for (unsigned long p : S) {
    std::size_t n = base.size();
    for (std::size_t i = 0; i < n; ++i) base.push_back(base[i] * p);
  }
  std::vector<mpz_class> out;
  for (const auto& b : base) {
    out.push_back(b);
    out.push_back(-b);
  }
  static const unsigned long extra[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (unsigned long q : extra) {
    if (std::find(S.begin(), S.end(), q) != S.end()) continue;
    for (const auto& b : base) {
      out.push_back(b * q);
      out.push_back(-b * q);
    }
  }
  return out;
}

// Anisotropic representative of the Witt class of u, built one value at a time:
// a is kept when u ⊥ ⟨-a⟩ drops the anisotropic dimension.
std::vector<mpz_class> q_kernel(std::vector<mpz_class> u, std::size_t m) {
  std::vector<mpz_class> g;
  if (m == u.size()) return u;
  while (m > 1) {
    bool found = false;
    for (const auto& a : candidate_values(u)) {
      u.push_back(-a);
      if (q_aniso_dim(u) + 1 == m) {
        g.push_back(a);
        --m;
        found = true;
        break;
      }
      u.pop_back();
    }
    if (!found) throw Error(ErrorCode::ConstructionFailed, "no kernel representative in the value pool");
  }
  if (m == 1) {
    mpz_class b = signed_disc(u);
    g.push_back(b);
  }
  return g;
}

WittClass base_decompose(const TowerField& F, const std::vector<mpz_class>& u) {
  WittClass w;
  std::size_t n = u.size();
  std::vector<mpz_class> ker;
  if (F.is_rational()) {
    std::size_t m = q_aniso_dim(u);
    ker = q_kernel(u, m);
    w.signature = signature_of(u);
  } else {
    mpz_class d = 1;
    for (const auto& a : u) d = F.mul_units(d, a);
    if (n / 2 % 2) d = F.mul_units(d, F.unit(Rational(-1)));
    if (n % 2) {
      ker.push_back(d);
    } else if (!F.unit_is_square(d)) {
      ker.push_back(1);
      ker.push_back(F.mul_units(d, F.unit(Rational(-1))));
    }
  }
  w.witt_index = (n - ker.size()) / 2;
  for (auto& a : ker) w.kernel.entries.push_back(FormEntry{a, 0});
  return w;
}

WittClass decompose_rec(const TowerField& F, const std::vector<FormEntry>& f, std::size_t level) {
  if (level == 0) {
    std::vector<mpz_class> u;
    for (const auto& e : f) u.push_back(e.unit);
    return base_decompose(F, u);
  }
  std::uint32_t bit = 1u << (level - 1);
  std::vector<FormEntry> f1, f2;
  for (const auto& e : f) {
    if (e.mask & bit)
      f2.push_back(FormEntry{e.unit, e.mask & ~bit});
    else
      f1.push_back(e);
  }
  WittClass w1 = decompose_rec(F, f1, level - 1);
  WittClass w2 = decompose_rec(F, f2, level - 1);
  WittClass w;
  w.witt_index = w1.witt_index + w2.witt_index;
  w.kernel = w1.kernel;
  for (auto e : w2.kernel.entries) {
    e.mask |= bit;
    w.kernel.entries.push_back(e);
  }
  if (w1.signature && w2.signature) w.signature = *w1.signature + *w2.signature;
  return w;
}

bool witt_zero_rec(const TowerField& F, const std::vector<FormEntry>& f, std::size_t level) {
  if (f.size() % 2) return false;
  if (level == 0) {
    std::vector<mpz_class> u;
    for (const auto& e : f) u.push_back(e.unit);
    if (F.is_rational()) return q_witt_zero(u);
    return base_decompose(F, u).is_zero();
  }
  std::uint32_t bit = 1u << (level - 1);
  std::vector<FormEntry> f1, f2;
  for (const auto& e : f) (e.mask & bit ? f2 : f1).push_back(FormEntry{e.unit, e.mask & ~bit});
  return witt_zero_rec(F, f1, level - 1) && witt_zero_rec(F, f2, level - 1);
}

void check_entries(const TowerField& F, const DiagForm& f) {
  std::uint32_t allowed = F.depth() >= 32 ? ~0u : ((1u << F.depth()) - 1);
  for (const auto& e : f.entries) {
    if (e.is_zero()) throw Error(ErrorCode::ZeroInput, "zero diagonal entry");
    if (e.mask & ~allowed) throw Error(ErrorCode::InvalidArgument, "entry uses an indeterminate outside the tower");
  }
}

}  // namespace

// ---------------------------------------------------------------- TowerField

TowerField::TowerField(unsigned p, std::vector<std::string> vars) : p_(p), vars_(std::move(vars)) {
  if (vars_.size() > 32) throw Error(ErrorCode::InvalidArgument, "at most 32 indeterminates");
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw Error(ErrorCode::InvalidArgument, "bad indeterminate name '" + v + "'");
    if (!seen.insert(v).second) throw Error(ErrorCode::InvalidArgument, "repeated indeterminate '" + v + "'");
  }
  if (p_ != 0) {
    if (p_ == 2) throw Error(ErrorCode::UnsupportedBase, "forms over characteristic 2");
    if (!is_prime(p_)) throw Error(ErrorCode::UnsupportedBase, "GF(" + std::to_string(p_) + ") is not a prime field");
    for (unsigned a = 2; a < p_; ++a)
      if (legendre(a, p_) == -1) {
        nonsq_ = a;
        break;
      }
  }
}

TowerField TowerField::rationals(std::vector<std::string> vars) { return TowerField(0, std::move(vars)); }

TowerField TowerField::prime(unsigned p, std::vector<std::string> vars) { return TowerField(p, std::move(vars)); }

TowerField TowerField::parse(const std::string& base, std::vector<std::string> vars) {
  if (base == "Q" || base == "QQ") return rationals(std::move(vars));
  if (base.size() > 4 && base.rfind("GF(", 0) == 0 && base.back() == ')') {
    std::string inner = base.substr(3, base.size() - 4);
    char* end = nullptr;
    unsigned long q = std::strtoul(inner.c_str(), &end, 10);
    if (end && *end == '\0' && q > 1) {
      if (q % 2 == 0) throw Error(ErrorCode::UnsupportedBase, "forms over " + base);
      return prime(static_cast<unsigned>(q), std::move(vars));
    }
  }
  throw Error(ErrorCode::ConfigParseError, "unknown form base '" + base + "'");
}

std::string TowerField::name() const {
  std::string s = is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")";
  for (const auto& v : vars_) s += "((" + v + "))";
  return s;
}

mpz_class TowerField::unit(const Rational& a) const {
  if (a.is_zero()) return 0;
  mpz_class n = a.num() * a.den();
  if (is_rational()) return squarefree_part(n);
  if (mod_small(n, p_) == 0) return 0;
  return legendre(n, p_) == 1 ? mpz_class(1) : mpz_class(nonsq_);
}

mpz_class TowerField::mul_units(const mpz_class& a, const mpz_class& b) const {
  if (sgn(a) == 0 || sgn(b) == 0) return 0;
  if (is_rational()) return sq_mul(a, b);
  return (a == b) ? mpz_class(1) : mpz_class(nonsq_);
}

bool TowerField::unit_is_square(const mpz_class& a) const { return a == 1; }

// ---------------------------------------------------------------- entries

FormEntry make_entry(const TowerField& F, const Rational& unit, std::uint32_t mask) {
  return FormEntry{F.unit(unit), mask};
}

FormEntry parse_entry(const TowerField& F, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::ConfigParseError, "empty form entry");
  Rational coef(1);
  if (s[0] == '-' || s[0] == '+') {
    if (s[0] == '-') coef = Rational(-1);
    s = s.substr(1);
  }
  std::uint32_t mask = 0;
  std::stringstream ss(s);
  std::string tok;
  RationalField Q;
  bool any = false;
  while (std::getline(ss, tok, '*')) {
    if (tok.empty()) throw Error(ErrorCode::ConfigParseError, "bad form entry '" + text + "'");
    any = true;
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      try {
        coef *= Q.parse(tok);
      } catch (const Error&) {
        throw Error(ErrorCode::ConfigParseError, "bad coefficient '" + tok + "'");
      }
      continue;
    }
    std::string name = tok;
    unsigned long e = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string ex = tok.substr(caret + 1);
      if (ex.empty() || !std::all_of(ex.begin(), ex.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(ErrorCode::ConfigParseError, "bad exponent in '" + tok + "'");
      e = std::stoul(ex);
    }
    const auto& vars = F.vars();
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw Error(ErrorCode::ConfigParseError, "unknown indeterminate '" + name + "'");
    if (e % 2) mask ^= 1u << (it - vars.begin());
  }
  if (!any) throw Error(ErrorCode::ConfigParseError, "bad form entry '" + text + "'");
  FormEntry out = make_entry(F, coef, mask);
  if (out.is_zero()) throw Error(ErrorCode::ConfigParseError, "form entry '" + text + "' is zero");
  return out;
}

std::string entry_string(const TowerField& F, const FormEntry& e) {
  std::string mono;
  for (std::size_t i = 0; i < F.depth(); ++i)
    if (e.mask >> i & 1u) mono += (mono.empty() ? "" : "*") + F.vars()[i];
  if (mono.empty()) return e.unit.get_str();
  if (e.unit == 1) return mono;
  if (e.unit == -1) return "-" + mono;
  return e.unit.get_str() + "*" + mono;
}

FormEntry mul(const TowerField& F, const FormEntry& a, const FormEntry& b) {
  return FormEntry{F.mul_units(a.unit, b.unit), a.mask ^ b.mask};
}

FormEntry neg(const TowerField& F, const FormEntry& a) {
  return FormEntry{F.mul_units(a.unit, F.unit(Rational(-1))), a.mask};
}

bool is_square(const TowerField& F, const FormEntry& a) { return a.mask == 0 && F.unit_is_square(a.unit); }

// ---------------------------------------------------------------- forms

DiagForm diag(const TowerField& F, const std::vector<std::string>& literals) {
  DiagForm f;
  for (const auto& s : literals) f.entries.push_back(parse_entry(F, s));
  return f;
}

std::string form_string(const TowerField& F, const DiagForm& f) {
  std::string s = "<";
  for (std::size_t i = 0; i < f.dim(); ++i) s += (i ? ", " : "") + entry_string(F, f.entries[i]);
  return s + ">";
}

DiagForm pfister(const TowerField& F, const std::vector<FormEntry>& gens) {
  DiagForm f{{FormEntry{1, 0}}};
  for (const auto& g : gens) {
    if (g.is_zero()) throw Error(ErrorCode::ZeroGenerator, "Pfister generator is zero");
    DiagForm h = f;
    for (const auto& e : f.entries) h.entries.push_back(mul(F, e, neg(F, g)));
    f = std::move(h);
  }
  return f;
}

DiagForm tensor(const TowerField& F, const DiagForm& f, const DiagForm& g) {
  DiagForm h;
  for (const auto& a : f.entries)
    for (const auto& b : g.entries) h.entries.push_back(mul(F, a, b));
  return h;
}

DiagForm orth_sum(const DiagForm& f, const DiagForm& g) {
  DiagForm h = f;
  h.entries.insert(h.entries.end(), g.entries.begin(), g.entries.end());
  return h;
}

DiagForm scale(const TowerField& F, const FormEntry& a, const DiagForm& f) {
  DiagForm h;
  for (const auto& e : f.entries) h.entries.push_back(mul(F, a, e));
  return h;
}

DiagForm sorted(DiagForm f) {
  std::sort(f.entries.begin(), f.entries.end());
  return f;
}

WittClass witt_decompose(const DiagForm& f, const TowerField& F) {
  check_entries(F, f);
  WittClass w = decompose_rec(F, f.entries, F.depth());
  w.kernel = sorted(std::move(w.kernel));
  return w;
}

bool is_witt_zero(const DiagForm& f, const TowerField& F) {
  check_entries(F, f);
  return witt_zero_rec(F, f.entries, F.depth());
}

bool is_isometric(const DiagForm& f, const DiagForm& g, const TowerField& F) {
  if (f.dim() != g.dim()) return false;
  return is_witt_zero(orth_sum(f, scale(F, FormEntry{F.unit(Rational(-1)), 0}, g)), F);
}

bool is_hyperbolic(const DiagForm& f, const TowerField& F) { return is_witt_zero(f, F); }

bool is_anisotropic(const DiagForm& f, const TowerField& F) { return witt_decompose(f, F).witt_index == 0; }

// ---------------------------------------------------------------- invariants

FormAlbertData FormAlbertData::split(const std::array<FormEntry, 3>& gamma) {
  return FormAlbertData{{FormEntry{1, 0}, FormEntry{1, 0}, FormEntry{1, 0}}, gamma};
}

AlbertInvariants f3_f5(const TowerField& F, const FormAlbertData& A) {
  for (const auto& g : A.gamma)
    if (g.is_zero()) throw Error(ErrorCode::ZeroGamma, "Gamma has a zero entry");
  AlbertInvariants inv;
  for (int i = 0; i < 3; ++i) inv.gamma_normalized[i] = mul(F, A.gamma[i], A.gamma[1]);
  inv.f3_form = pfister(F, {A.c[0], A.c[1], A.c[2]});
  DiagForm g = pfister(F, {neg(F, inv.gamma_normalized[0]), neg(F, inv.gamma_normalized[2])});
  inv.f5_form = tensor(F, g, inv.f3_form);
  inv.f3 = witt_decompose(inv.f3_form, F);
  inv.f5 = witt_decompose(inv.f5_form, F);
  return inv;
}

DiagForm k_norm_form(const TowerField& F, const FormEntry& delta) { return pfister(F, {delta}); }

namespace {

bool mt3_with(const TowerField& F, const AlbertInvariants& inv, const DiagForm& kform,
              const std::vector<FormEntry>& gamma) {
  if (gamma.size() != 2) throw Error(ErrorCode::BadGamma, "gamma needs two generators");
  for (const auto& g : gamma)
    if (g.is_zero()) throw Error(ErrorCode::BadGamma, "gamma generator is zero");
  DiagForm gf = pfister(F, gamma);
  return is_isometric(tensor(F, gf, inv.f3_form), inv.f5_form, F) && is_hyperbolic(tensor(F, gf, kform), F);
}

}  // namespace

bool mt3_check(const TowerField& F, const FormAlbertData& A, const FormEntry& delta,
               const std::vector<FormEntry>& gamma) {
  if (delta.is_zero()) throw Error(ErrorCode::ZeroInput, "delta is zero");
  return mt3_with(F, f3_f5(F, A), k_norm_form(F, delta), gamma);
}

bool mt3prime_check(const TowerField& F, const FormAlbertData& A, const FormEntry& delta) {
  auto inv = f3_f5(F, A);
  return is_hyperbolic(tensor(F, inv.f5_form, k_norm_form(F, delta)), F);
}

std::vector<FormEntry> default_pool(const TowerField& F, const FormAlbertData& A, const FormEntry& delta) {
  std::vector<FormEntry> base{FormEntry{1, 0}};
  for (const auto& g : A.gamma) base.push_back(g);
  for (int i : {0, 2}) base.push_back(mul(F, A.gamma[i], A.gamma[1]));
  base.push_back(delta);
  std::vector<FormEntry> signed_base;
  for (const auto& b : base) {
    signed_base.push_back(b);
    signed_base.push_back(neg(F, b));
  }
  std::vector<FormEntry> pool;
  auto add = [&](const FormEntry& e) {
    if (std::find(pool.begin(), pool.end(), e) == pool.end()) pool.push_back(e);
  };
  for (const auto& b : signed_base) add(b);
  for (std::size_t i = 0; i < signed_base.size(); ++i)
    for (std::size_t j = i + 1; j < signed_base.size(); ++j) add(mul(F, signed_base[i], signed_base[j]));
  return pool;
}

Mt3Search mt3_search(const TowerField& F, const FormAlbertData& A, const FormEntry& delta,
                     const std::vector<FormEntry>* pool, std::size_t bound) {
  if (delta.is_zero()) throw Error(ErrorCode::ZeroInput, "delta is zero");
  Mt3Search out;
  out.complete = F.depth() == 0;
  auto inv = f3_f5(F, A);
  DiagForm kform = k_norm_form(F, delta);
  std::vector<FormEntry> P = pool ? *pool : default_pool(F, A, delta);
  // Over Q every pool contains -1; over Q the 3- and 5-Pfister classes are
  // 0 or definite, so <<1,1>> or <<-1,-1>> decides.
  if (F.is_rational() && std::find(P.begin(), P.end(), FormEntry{-1, 0}) == P.end()) out.complete = false;

  std::vector<std::vector<FormEntry>> cands;
  cands.push_back({FormEntry{1, 0}, FormEntry{1, 0}});
  cands.push_back({neg(F, inv.gamma_normalized[0]), neg(F, inv.gamma_normalized[2])});
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i; j < P.size(); ++j) cands.push_back({P[i], P[j]});
  for (const auto& g : cands) {
    if (out.tried >= bound) {
      out.complete = false;
      break;
    }
    ++out.tried;
    if (mt3_with(F, inv, kform, g)) {
      out.gamma = g;
      return out;
    }
  }
  return out;
}

const char* tits_label_name(TitsIndexLabel l) {
  switch (l) {
    case TitsIndexLabel::quasi_split: return "quasi_split";
    case TitsIndexLabel::row2_two_circles: return "row2_two_circles";
    case TitsIndexLabel::row3_one_circle: return "row3_one_circle";
    case TitsIndexLabel::anisotropic: return "anisotropic";
    case TitsIndexLabel::undecided: return "undecided";
  }
  return "unknown";
}

TitsIndexReport classify_index(const TowerField& F, const FormAlbertData& A, const FormEntry& delta) {
  TitsIndexReport r;
  r.inv = f3_f5(F, A);
  r.search = mt3_search(F, A, delta);
  if (!r.search.gamma) {
    if (r.search.complete) {
      r.label = TitsIndexLabel::anisotropic;
      r.reason = "no gamma exists: the candidate pool decides the signature criterion";
    } else {
      r.reason = "no gamma in the pool; search is one-sided over " + F.name();
    }
    return r;
  }
  if (r.inv.f3.is_zero()) {
    r.label = TitsIndexLabel::quasi_split;
    r.reason = "isotropic and f3 hyperbolic";
    return r;
  }
  if (is_square(F, delta)) {
    r.reason = "K split: inner type, f3 nonzero";
    return r;
  }
  if (!(F.is_rational() && F.depth() == 0)) {
    r.reason = "killed-by-K is decided only over Q";
    return r;
  }
  // Over Q a nonzero 3-Pfister is definite; it dies over imaginary K only.
  r.killed_by_k = delta.unit < 0;
  r.label = *r.killed_by_k ? TitsIndexLabel::row2_two_circles : TitsIndexLabel::row3_one_circle;
  r.reason = *r.killed_by_k ? "f3 nonzero, killed by imaginary K" : "f3 nonzero, survives in real K";
  return r;
}

TitsIndexLabel tits_index(const TowerField& F, const FormAlbertData& A, const FormEntry& delta) {
  auto r = classify_index(F, A, delta);
  if (r.label == TitsIndexLabel::undecided) throw Error(ErrorCode::UndecidedRegime, r.reason);
  return r.label;
}

// ---------------------------------------------------------------- local data

namespace detail {

int hilbert(const mpz_class& a, const mpz_class& b, unsigned long p) {
  bool al = mpz_divisible_ui_p(a.get_mpz_t(), p);
  bool be = mpz_divisible_ui_p(b.get_mpz_t(), p);
  mpz_class u = al ? mpz_class(a / p) : a;
  mpz_class v = be ? mpz_class(b / p) : b;
  if (p == 2) {
    auto eps = [](const mpz_class& x) { return mod_small(x, 4) == 3 ? 1 : 0; };
    auto omega = [](const mpz_class& x) {
      unsigned long r = mod_small(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(v) + (al ? omega(v) : 0) + (be ? omega(u) : 0);
    return e % 2 ? -1 : 1;
  }
  int s = (al && be && p % 4 == 3) ? -1 : 1;
  if (be) s *= legendre(u, p);
  if (al) s *= legendre(v, p);
  return s;
}

// Serre's isotropy criteria on (dim, det, Hasse invariant), peeling off
// hyperbolic planes while the form stays isotropic.
std::size_t local_aniso_dim(const std::vector<mpz_class>& units, unsigned long p) {
  std::size_t n = units.size();
  mpz_class d = 1;
  int eps = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) eps *= hilbert(units[i], units[j], p);
    d = sq_mul(d, units[i]);
  }
  for (;;) {
    if (n <= 1) return n;
    bool iso;
    if (n == 2) iso = local_square(-d, p);
    else if (n == 3) iso = hilbert(-1, -d, p) == eps;
    else if (n == 4) iso = !local_square(d, p) || eps == hilbert(-1, -1, p);
    else iso = true;
    if (!iso) return n;
    n -= 2;
    d = -d;
    eps *= hilbert(-1, d, p);
  }
}

std::vector<unsigned long> bad_primes(const std::vector<mpz_class>& units) {
  std::set<unsigned long> s{2};
  for (const auto& a : units)
    for (unsigned long p : prime_factors(a)) s.insert(p);
  return {s.begin(), s.end()};
}

}  // namespace detail

}  // namespace e6iso
