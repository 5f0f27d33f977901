#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specrig/generators.hpp"
#include "specrig/pencil.hpp"
#include "specrig/polynomial.hpp"
#include "specrig/spectrum.hpp"

namespace specrig {

enum class Verdict { equivalent, hypothesis_failed, reconstruction_failed };

std::string_view verdict_name(Verdict v);

/// Process exit code for a verdict: 0, 2, 3.
int verdict_exit_code(Verdict v);

struct EntryRef {
  std::string matrix;
  std::size_t i = 0;
  std::size_t j = 0;
  Complex value;
};

/// One structured finding; `step` names the reconstruction stage.
struct Finding {
  std::string step;
  std::string message;
  std::vector<EntryRef> entries;
};

struct RigidityReport {
  Verdict verdict = Verdict::hypothesis_failed;
  Family family = Family::snu2;
  std::size_t n = 0;
  std::optional<double> nu;
  /// Diagonal unitary with first entry 1, expressed in `basis`.
  std::optional<Matrix> witness;
  /// Unitary whose columns are A1's eigenvectors, ordered like the reference H.
  std::optional<Matrix> basis;
  std::map<std::string, double> condition_residuals;
  std::vector<Finding> diagnostics;
  std::string failed_step;
  /// Relative certification residual (see Certification); set when a witness exists.
  std::optional<double> certified_residual;
  std::optional<double> certified_residual_abs;

  /// basis * witness: conjugates the reference triple onto the candidate.
  Matrix global_witness() const;
};

/// Outcome of the joint-spectrum hypothesis checks.
struct ConditionCheck {
  bool a1_normal = false;
  std::vector<PencilComparison> pencils;

  bool all() const;
};

/// The five pencils (A1,A2A2*), (A1,A2*A2), (A1,A3A3*), (A1,A3*A3), (A1,A2A3).
std::vector<Pencil> snu2_pencils();
/// The four pencils (A1,A2A2*), (A1,A2*A2), (A1,A3A3*), (A1,A2A3).
std::vector<Pencil> sl2_pencils();

/**
 * Precomputed reference data for one (family, n, nu): the generator triple and
 * the determinantal polynomials of its hypothesis pencils. Immutable after
 * construction, so one instance can serve many candidate tuples. Each pencil
 * slot is divided by the matching reference slot norm before comparison.
 */
class RigidityChecker {
 public:
  static RigidityChecker snu2(std::size_t n, double nu, double tol = kDefaultTol);
  static RigidityChecker sl2(std::size_t n, double tol = kDefaultTol);

  const GeneratorTuple& reference() const { return ref_; }
  double tol() const { return tol_; }

  ConditionCheck verify(const GeneratorTuple& t) const;
  RigidityReport reconstruct(const GeneratorTuple& t) const;

 private:
  RigidityChecker(GeneratorTuple ref, std::vector<Pencil> pencils, double tol);

  GeneratorTuple ref_;
  std::vector<Pencil> pencils_;
  /// Per pencil slot: max(1, ||reference slot||_HS).
  std::vector<std::vector<double>> scales_;
  /// Reference polynomials in the scaled variables.
  std::vector<MultiPoly> ref_polys_;
  double tol_;
};

ConditionCheck verify_conditions_snu2(const GeneratorTuple& t, std::size_t n, double nu, double tol = kDefaultTol);
ConditionCheck verify_conditions_sl2(const GeneratorTuple& t, std::size_t n, double tol = kDefaultTol);

RigidityReport reconstruct_snu2(const GeneratorTuple& t, std::size_t n, double nu, double tol = kDefaultTol);
RigidityReport reconstruct_sl2(const GeneratorTuple& t, std::size_t n, double tol = kDefaultTol);

/// ||P_lambda b P_lambda - mu P_lambda||_HS with no spectrum precondition.
double compression_residual(const Matrix& a1, const Matrix& b, Complex lambda, Complex mu,
                            double tol = kDefaultTol);

/**
 * Spectral compression test for a multiplicity-one line lambda x1 + mu x2 = 1
 * of det(x1 a1 + x2 b - I). Throws DomainError when the line is not in the
 * spectrum or has multiplicity above one.
 */
bool compression_check(const Matrix& a1, const Matrix& b, Complex lambda, Complex mu, double tol = kDefaultTol);

struct Certification {
  /// max_i ||t_i - w ref_i w*||_HS
  double absolute = 0.0;
  /// max_i ||t_i - w ref_i w*||_HS / max(1, ||ref_i||_HS)
  double relative = 0.0;
};

/// Throws DomainError when w is not unitary within tol.
Certification certify_equivalence(const GeneratorTuple& t, const GeneratorTuple& ref, const Matrix& w,
                                  double tol = kDefaultTol);

}  // namespace specrig
