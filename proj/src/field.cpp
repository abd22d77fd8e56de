#include "e6iso/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "e6iso/poly_parse.hpp"

namespace e6iso {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::InseparablePolynomial: return "InseparablePolynomial";
    case ErrorCode::NotDegreeTwo: return "NotDegreeTwo";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NoneExist: return "NoneExist";
    case ErrorCode::NegativePower: return "NegativePower";
    case ErrorCode::NotPrimitiveIdempotent: return "NotPrimitiveIdempotent";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::GammaNotUnit: return "GammaNotUnit";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::NotInnerIdeal: return "NotInnerIdeal";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::TripleMismatch: return "TripleMismatch";
    case ErrorCode::NotKSubmodule: return "NotKSubmodule";
    case ErrorCode::NotAWitness: return "NotAWitness";
    case ErrorCode::TraceZeroS: return "TraceZeroS";
    case ErrorCode::CharTwoUnsupportedShape: return "CharTwoUnsupportedShape";
    case ErrorCode::NotACongruence: return "NotACongruence";
    case ErrorCode::ZeroGenerator: return "ZeroGenerator";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::ZeroGamma: return "ZeroGamma";
    case ErrorCode::BadGamma: return "BadGamma";
    case ErrorCode::UndecidedRegime: return "UndecidedRegime";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

// ---------------------------------------------------------------- rationals

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

RationalField::Scalar RationalField::inv(const Scalar& a) const {
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return one() / a;
}

RationalField::Scalar RationalField::random(Rng& rng, int box) const {
  std::uniform_int_distribution<long> dist(-box, box);
  return Rational(dist(rng));
}

RationalField::Scalar RationalField::parse(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::ConfigParseError, "empty rational literal");
  auto valid_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorCode::ConfigParseError, "bad rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorCode::ConfigParseError, "zero denominator in '" + s + "'");
  return Rational(mpq_class(n, d));
}

std::optional<RationalField::Scalar> RationalField::sqrt(const Scalar& a) const {
  if (a.sign() < 0) return std::nullopt;
  mpz_class n = a.num(), d = a.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "squarefree part of zero");
  mpz_class r = abs(n);
  mpz_class out = 1;
  // Trial division to 10^6; a remaining cofactor is either a square or is
  // taken as squarefree (exact for |n| < 10^18).
  for (unsigned long p = 2; p <= 1000000; p += (p == 2 ? 1 : 2)) {
    mpz_class pp = p;
    if (pp * pp > r) break;
    int e = 0;
    while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
      mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
      ++e;
    }
    if (e & 1) out *= p;
  }
  if (r > 1 && !mpz_perfect_square_p(r.get_mpz_t())) out *= r;
  return sgn(n) < 0 ? mpz_class(-out) : out;
}

RationalField::Scalar RationalField::square_class(const Scalar& a) const {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "square class of zero");
  return Rational(mpq_class(squarefree_part(a.num() * a.den())));
}

// ---------------------------------------------------------------- GF(p^m)

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic-or-not b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  std::uint64_t lead_inv = 1;
  {
    std::uint64_t base = b.back(), e = p - 2;
    while (e) {
      if (e & 1) lead_inv = lead_inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
  }
  while (a.size() >= b.size()) {
    std::uint64_t c = a.back() * lead_inv % p;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * b[i]) % p);
    trim(a);
  }
  return a;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  size_t m = f.size() - 1;
  for (size_t k = 1; 2 * k <= m; ++k) {
    std::uint64_t count = ipow(p, static_cast<std::uint32_t>(k));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(k + 1);
      std::uint64_t t = idx;
      for (size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[k] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t m) {
  std::uint64_t count = ipow(p, m);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly g(m + 1);
    std::uint64_t t = idx;
    for (std::uint32_t i = 0; i < m; ++i) {
      g[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    g[m] = 1;
    if (is_irreducible(p, g)) return g;
  }
  throw Error(ErrorCode::InvalidArgument, "no irreducible polynomial found");
}

namespace detail {

const GfData* join(const GfData* a, const GfData* b) {
  if (a == b) return a;
  if (!a) return b;
  if (!b) return a;
  if (a->same(*b)) return a;
  throw Error(ErrorCode::DescriptorMismatch, "operands from different finite fields");
}

std::uint32_t GfData::add_slow(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0, place = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    r += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return r;
}

std::uint32_t GfData::mul_slow(std::uint32_t a, std::uint32_t b) const {
  Poly x(m), y(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  Poly prod(2 * m, 0);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(x[i]) * y[j]) % p);
  Poly r = poly_mod(prod, modulus, p);
  std::uint32_t v = 0, place = 1;
  for (std::uint32_t c : r) {
    v += c * place;
    place *= p;
  }
  return v;
}

std::uint32_t GfData::add(std::uint32_t a, std::uint32_t b) const {
  if (m == 1) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  if (tables) return add_t[a * q + b];
  return add_slow(a, b);
}

std::uint32_t GfData::neg(std::uint32_t a) const {
  if (m == 1) return a == 0 ? 0 : p - a;
  std::uint32_t r = 0, place = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    std::uint32_t c = a % p;
    r += ((p - c) % p) * place;
    a /= p;
    place *= p;
  }
  return r;
}

std::uint32_t GfData::mul(std::uint32_t a, std::uint32_t b) const {
  if (m == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
  if (tables) return mul_t[a * q + b];
  return mul_slow(a, b);
}

std::uint32_t GfData::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t GfData::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in GF(q)");
  if (tables) return inv_t[a];
  return pow(a, q - 2);
}

}  // namespace detail

GfElement operator/(const GfElement& a, const GfElement& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in GF(q)");
  const auto* f = detail::join(a.f_, b.f_);
  return GfElement(f, f->mul(a.v_, f->inv(b.v_)));
}

GaloisField::GaloisField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "characteristic must be prime");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  std::uint64_t q = ipow(p, m);
  if (q > (1u << 24)) throw Error(ErrorCode::InvalidArgument, "field too large");
  auto d = std::make_shared<detail::GfData>();
  d->p = p;
  d->m = m;
  d->q = static_cast<std::uint32_t>(q);
  if (modulus.empty()) {
    modulus = m == 1 ? Poly{0, 1} : least_irreducible(p, m);
  } else {
    for (auto& c : modulus) c %= p;
    if (modulus.size() != m + 1 || modulus.back() != 1)
      throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree m");
    if (!is_irreducible(p, modulus)) throw Error(ErrorCode::InvalidArgument, "modulus is reducible");
  }
  d->modulus = modulus;
  if (m > 1 && q <= 256) {
    d->add_t.resize(q * q);
    d->mul_t.resize(q * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        d->add_t[a * q + b] = static_cast<std::uint16_t>(d->add_slow(a, b));
        d->mul_t[a * q + b] = static_cast<std::uint16_t>(d->mul_slow(a, b));
      }
    d->inv_t.assign(q, 0);
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b)
        if (d->mul_t[a * q + b] == 1) {
          d->inv_t[a] = b;
          break;
        }
    d->tables = true;
  }
  if (p != 2) {
    for (std::uint32_t z = 1; z < q; ++z)
      if (d->pow(z, (q - 1) / 2) != 1) {
        d->nonsquare = z;
        break;
      }
  }
  d_ = std::move(d);
}

GaloisField::Scalar GaloisField::element(std::uint64_t index) const {
  if (index >= d_->q) throw Error(ErrorCode::InvalidArgument, "element index out of range");
  return GfElement(d_.get(), static_cast<std::uint32_t>(index));
}

GaloisField::Scalar GaloisField::from_int(long n) const {
  long r = n % static_cast<long>(d_->p);
  if (r < 0) r += d_->p;
  return element(static_cast<std::uint64_t>(r));
}

GaloisField::Scalar GaloisField::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
  Poly c = coeffs;
  for (auto& x : c) x %= d_->p;
  Poly r = poly_mod(c, d_->modulus, d_->p);
  std::uint32_t v = 0, place = 1;
  for (std::uint32_t x : r) {
    v += x * place;
    place *= d_->p;
  }
  return element(v);
}

std::vector<std::uint32_t> GaloisField::coeffs(const Scalar& a) const {
  detail::join(a.data(), d_.get());
  std::vector<std::uint32_t> c(d_->m);
  std::uint32_t v = a.index();
  for (auto& x : c) {
    x = v % d_->p;
    v /= d_->p;
  }
  return c;
}

GaloisField::Scalar GaloisField::inv(const Scalar& a) const { return one() / a; }

GaloisField::Scalar GaloisField::pow(const Scalar& a, std::uint64_t e) const {
  detail::join(a.data(), d_.get());
  return GfElement(d_.get(), d_->pow(a.index(), e));
}

GaloisField::Scalar GaloisField::random(Rng& rng, int) const {
  std::uniform_int_distribution<std::uint32_t> dist(0, d_->q - 1);
  return element(dist(rng));
}

GaloisField::Scalar GaloisField::parse(std::string_view text) const {
  auto terms = parse_poly_terms(text, "t");
  Scalar r = zero();
  for (const auto& [coef, deg] : terms) {
    RationalField Q;
    Rational c = Q.parse(coef);
    Scalar num = from_int(mpz_class(c.num() % d_->p).get_si());
    Scalar den = from_int(mpz_class(c.den() % d_->p).get_si());
    if (den.is_zero()) throw Error(ErrorCode::ConfigParseError, "denominator divisible by p");
    if (deg > 0 && d_->m == 1) throw Error(ErrorCode::ConfigParseError, "prime field literal uses t");
    Poly mono(static_cast<size_t>(deg) + 1, 0);
    mono[static_cast<size_t>(deg)] = 1;
    r = r + num / den * from_coeffs(mono);
  }
  return r;
}

std::string GaloisField::str(const Scalar& a) const {
  auto c = coeffs(a);
  if (d_->m == 1) return std::to_string(c[0]);
  std::string out;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::string GaloisField::name() const {
  if (d_->m == 1) return "GF(" + std::to_string(d_->p) + ")";
  return "GF(" + std::to_string(d_->p) + "^" + std::to_string(d_->m) + ")";
}

bool GaloisField::is_square(const Scalar& a) const {
  if (a.is_zero() || d_->p == 2) return true;
  detail::join(a.data(), d_.get());
  return d_->pow(a.index(), (d_->q - 1) / 2) == 1;
}

std::optional<GaloisField::Scalar> GaloisField::sqrt(const Scalar& a) const {
  detail::join(a.data(), d_.get());
  if (a.is_zero()) return zero();
  const auto& d = *d_;
  if (d.p == 2) return GfElement(d_.get(), d.pow(a.index(), d.q / 2));
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks in GF(q)^×.
  std::uint64_t Q = d.q - 1;
  unsigned S = 0;
  while (Q % 2 == 0) {
    Q /= 2;
    ++S;
  }
  std::uint32_t z = d.pow(d.nonsquare, Q);
  std::uint32_t x = d.pow(a.index(), (Q + 1) / 2);
  std::uint32_t t = d.pow(a.index(), Q);
  unsigned M = S;
  while (t != 1) {
    unsigned i = 0;
    std::uint32_t tt = t;
    while (tt != 1) {
      tt = d.mul(tt, tt);
      ++i;
    }
    std::uint32_t b = z;
    for (unsigned j = 0; j + i + 1 < M; ++j) b = d.mul(b, b);
    x = d.mul(x, b);
    z = d.mul(b, b);
    t = d.mul(t, z);
    M = i;
  }
  return GfElement(d_.get(), x);
}

GaloisField::Scalar GaloisField::square_class(const Scalar& a) const {
  detail::join(a.data(), d_.get());
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "square class of zero");
  if (d_->p == 2 || is_square(a)) return one();
  return element(d_->nonsquare);
}

// ---------------------------------------------------------------- parsing

AnyField make_field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
  return GaloisField(p, m, std::move(modulus));
}

AnyField parse_field(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::toupper(c)));
  if (s == "Q" || s == "QQ" || s == "RATIONALS") return RationalField{};
  if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(3, s.size() - 4);
    try {
      auto caret = inner.find('^');
      std::uint64_t p, m = 1;
      if (caret != std::string::npos) {
        p = std::stoull(inner.substr(0, caret));
        m = std::stoull(inner.substr(caret + 1));
      } else {
        std::uint64_t q = std::stoull(inner);
        p = 0;
        for (std::uint64_t d = 2; d <= q; ++d)
          if (q % d == 0) {
            p = d;
            break;
          }
        if (p == 0) throw Error(ErrorCode::ConfigParseError, "bad field size");
        m = 0;
        while (q % p == 0) {
          q /= p;
          ++m;
        }
        if (q != 1) throw Error(ErrorCode::ConfigParseError, "field size is not a prime power");
      }
      if (!is_prime(p) || m == 0 || m > 24) throw Error(ErrorCode::ConfigParseError, "bad field size");
      return GaloisField(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigParseError, "bad field literal '" + std::string(text) + "'");
    }
  }
  throw Error(ErrorCode::ConfigParseError, "unknown field '" + std::string(text) + "'");
}

}  // namespace e6iso
