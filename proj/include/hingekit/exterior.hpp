#pragma once

// Exterior algebra on R^m with dense coefficients over lexicographically
// ordered k-subsets of {0..m-1}, plus rank certificates for spans of
// exterior vectors in floating-point and exact-rational arithmetic.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace hingekit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rational = mpq_class;
using RVec = std::vector<Rational>;

inline constexpr double kDefaultRankTol = 1e-10;

std::size_t binomial(int n, int k);

/// Flat index <-> subset bijection. Subsets are sorted 0-based element lists;
/// index 0 is {0,1,..,k-1} and indices increase lexicographically.
std::size_t subset_index(int m, std::span<const int> subset);
std::vector<int> subset_at(int m, int k, std::size_t index);

/// Sign of the shuffle permutation that sorts (subset, complement).
int shuffle_sign(std::span<const int> subset);

template <class Scalar>
class BasicExteriorVector {
public:
    BasicExteriorVector(int grade, int ambient);
    BasicExteriorVector(int grade, int ambient, std::vector<Scalar> coeffs);

    int grade() const noexcept { return grade_; }
    int ambient() const noexcept { return ambient_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
    const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }

    bool is_zero() const;

    BasicExteriorVector& operator+=(const BasicExteriorVector& o);
    BasicExteriorVector& operator-=(const BasicExteriorVector& o);
    BasicExteriorVector& operator*=(const Scalar& s);

    friend BasicExteriorVector operator+(BasicExteriorVector a, const BasicExteriorVector& b) { return a += b; }
    friend BasicExteriorVector operator-(BasicExteriorVector a, const BasicExteriorVector& b) { return a -= b; }
    friend BasicExteriorVector operator*(const Scalar& s, BasicExteriorVector a) { return a *= s; }
    friend bool operator==(const BasicExteriorVector&, const BasicExteriorVector&) = default;

private:
    int grade_;
    int ambient_;
    std::vector<Scalar> coeffs_;
};

using ExteriorVector = BasicExteriorVector<double>;
using ExactExteriorVector = BasicExteriorVector<Rational>;

/// Coefficient on subset S is the determinant of rows S of [v_1 .. v_j].
/// `ambient` must be given when `vectors` is empty (the grade-0 unit).
ExteriorVector wedge(std::span<const Vec> vectors, int ambient = -1);
ExactExteriorVector wedge(std::span<const RVec> vectors, int ambient = -1);
ExteriorVector wedge(std::initializer_list<Vec> vectors);

/// Coefficient of a ^ b on e_1 ^ ... ^ e_m.
double top_pairing(const ExteriorVector& a, const ExteriorVector& b);
Rational top_pairing(const ExactExteriorVector& a, const ExactExteriorVector& b);

double norm(const ExteriorVector& v);
Vec as_vec(const ExteriorVector& v);
ExteriorVector to_double(const ExactExteriorVector& v);

/// Outcome of a rank test on a list of vectors in a common coefficient space.
/// `conull` is a unit functional vanishing on the span; present iff deficient.
struct RankCertificate {
    int rank = 0;
    int expected_rank = 0;
    std::vector<double> singular_values;  // descending; empty in exact mode
    double threshold = 0.0;               // tau used for the float rank
    bool deficient = false;
    bool exact = false;
    std::optional<Vec> conull;
    std::optional<RVec> exact_conull;  // primitive integer representative
    int coefficient_dim = 0;
};

/// Float mode: rank counts singular values above tol * sigma_max * max(rows, cols).
RankCertificate rank_of_span(std::span<const ExteriorVector> vs, int expected_rank,
                             double tol = kDefaultRankTol);
/// Exact mode: fraction-free elimination over the integers.
RankCertificate rank_of_span(std::span<const ExactExteriorVector> vs, int expected_rank);

/// Same rank rule as rank_of_span, for an arbitrary dense matrix.
struct MatrixRank {
    int rank = 0;
    Vec singular_values;
    double threshold = 0.0;
    Mat U;  // full left singular vectors
    Mat V;  // full right singular vectors
};
MatrixRank matrix_rank(const Mat& m, double tol = kDefaultRankTol);

/// Exact rank of a rational row list plus (optionally) one kernel vector
/// x with rows * x = 0, scaled to a primitive integer vector.
struct ExactRank {
    int rank = 0;
    std::optional<RVec> kernel_vector;
};
ExactRank exact_rank(const std::vector<RVec>& rows, int cols, bool want_kernel);

Rational parse_rational(const std::string& text);

} // namespace hingekit
