#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "e6iso/field.hpp"

namespace e6iso {

// k0((t1))...((tn)) with k0 = Q or GF(p), p odd. At most 32 indeterminates.
class TowerField {
 public:
  static TowerField rationals(std::vector<std::string> vars = {});
  static TowerField prime(unsigned p, std::vector<std::string> vars = {});
  // "Q" or "GF(p)"; GF(2^m) and composite orders raise UnsupportedBase.
  static TowerField parse(const std::string& base, std::vector<std::string> vars = {});

  bool is_rational() const { return p_ == 0; }
  unsigned p() const { return p_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t depth() const { return vars_.size(); }
  // Least quadratic nonresidue mod p.
  unsigned nonsquare() const { return nonsq_; }
  std::string name() const;

  // Square-class representative of a nonzero rational (squarefree integer over
  // Q, 1 or the least nonresidue over GF(p)); 0 for zero input.
  mpz_class unit(const Rational& a) const;
  mpz_class mul_units(const mpz_class& a, const mpz_class& b) const;
  bool unit_is_square(const mpz_class& a) const;

  friend bool operator==(const TowerField& a, const TowerField& b) {
    return a.p_ == b.p_ && a.vars_ == b.vars_;
  }

 private:
  TowerField(unsigned p, std::vector<std::string> vars);
  unsigned p_ = 0;
  unsigned nonsq_ = 0;
  std::vector<std::string> vars_;
};

// unit * t^mask, up to squares. unit == 0 marks a zero scalar.
struct FormEntry {
  mpz_class unit = 1;
  std::uint32_t mask = 0;

  bool is_zero() const { return sgn(unit) == 0; }
  friend bool operator==(const FormEntry& a, const FormEntry& b) {
    return a.mask == b.mask && a.unit == b.unit;
  }
  friend bool operator<(const FormEntry& a, const FormEntry& b) {
    return a.mask != b.mask ? a.mask < b.mask : a.unit < b.unit;
  }
};

FormEntry make_entry(const TowerField& F, const Rational& unit, std::uint32_t mask = 0);
// Literals such as "-3*x*z", "1/2*y^3", "-x".
FormEntry parse_entry(const TowerField& F, const std::string& text);
std::string entry_string(const TowerField& F, const FormEntry& e);
FormEntry mul(const TowerField& F, const FormEntry& a, const FormEntry& b);
FormEntry neg(const TowerField& F, const FormEntry& a);
bool is_square(const TowerField& F, const FormEntry& a);

struct DiagForm {
  std::vector<FormEntry> entries;

  std::size_t dim() const { return entries.size(); }
  friend bool operator==(const DiagForm&, const DiagForm&) = default;
};

DiagForm diag(const TowerField& F, const std::vector<std::string>& literals);
std::string form_string(const TowerField& F, const DiagForm& f);

DiagForm pfister(const TowerField& F, const std::vector<FormEntry>& gens);
DiagForm tensor(const TowerField& F, const DiagForm& f, const DiagForm& g);
DiagForm orth_sum(const DiagForm& f, const DiagForm& g);
DiagForm scale(const TowerField& F, const FormEntry& a, const DiagForm& f);
// Entries sorted; the Witt class and isometry class are unchanged.
DiagForm sorted(DiagForm f);

struct WittClass {
  std::size_t witt_index = 0;
  DiagForm kernel;
  // Signature at the ordering with Q's real place and every t_i > 0.
  std::optional<long> signature;

  bool is_zero() const { return kernel.entries.empty(); }
};

WittClass witt_decompose(const DiagForm& f, const TowerField& F);
bool is_isometric(const DiagForm& f, const DiagForm& g, const TowerField& F);
bool is_hyperbolic(const DiagForm& f, const TowerField& F);
bool is_anisotropic(const DiagForm& f, const TowerField& F);
bool is_witt_zero(const DiagForm& f, const TowerField& F);

// Albert data H3(C, Gamma): C by its three norm-form generators.
struct FormAlbertData {
  std::array<FormEntry, 3> c;
  std::array<FormEntry, 3> gamma;

  static FormAlbertData split(const std::array<FormEntry, 3>& gamma);
};

struct AlbertInvariants {
  std::array<FormEntry, 3> gamma_normalized;
  DiagForm f3_form;
  DiagForm f5_form;
  WittClass f3;
  WittClass f5;
};

AlbertInvariants f3_f5(const TowerField& F, const FormAlbertData& A);
DiagForm k_norm_form(const TowerField& F, const FormEntry& delta);

bool mt3_check(const TowerField& F, const FormAlbertData& A, const FormEntry& delta,
               const std::vector<FormEntry>& gamma);
bool mt3prime_check(const TowerField& F, const FormAlbertData& A, const FormEntry& delta);

std::vector<FormEntry> default_pool(const TowerField& F, const FormAlbertData& A, const FormEntry& delta);

struct Mt3Search {
  std::optional<std::vector<FormEntry>> gamma;
  std::size_t tried = 0;
  // Q with no indeterminates: a miss proves no gamma exists.
  bool complete = false;
};

Mt3Search mt3_search(const TowerField& F, const FormAlbertData& A, const FormEntry& delta,
                     const std::vector<FormEntry>* pool = nullptr, std::size_t bound = 1u << 16);

enum class TitsIndexLabel { quasi_split, row2_two_circles, row3_one_circle, anisotropic, undecided };
const char* tits_label_name(TitsIndexLabel l);

struct TitsIndexReport {
  TitsIndexLabel label = TitsIndexLabel::undecided;
  AlbertInvariants inv;
  Mt3Search search;
  std::optional<bool> killed_by_k;
  std::string reason;
};

TitsIndexReport classify_index(const TowerField& F, const FormAlbertData& A, const FormEntry& delta);
// Raises UndecidedRegime where classify_index reports undecided.
TitsIndexLabel tits_index(const TowerField& F, const FormAlbertData& A, const FormEntry& delta);

namespace detail {

// Hilbert symbol (a, b)_p of squarefree integers, p prime.
int hilbert(const mpz_class& a, const mpz_class& b, unsigned long p);
// Anisotropic dimension of a rational diagonal form over Q_p.
std::size_t local_aniso_dim(const std::vector<mpz_class>& units, unsigned long p);
std::vector<unsigned long> bad_primes(const std::vector<mpz_class>& units);

}  // namespace detail

}  // namespace e6iso
