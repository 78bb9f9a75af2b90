#include "hingekit/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hingekit/errors.hpp"

namespace hingekit {

std::size_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

std::size_t subset_index(int m, std::span<const int> subset) {
    // Count subsets that precede `subset` lexicographically.
    const int k = static_cast<int>(subset.size());
    std::size_t index = 0;
    int prev = -1;
    for (int pos = 0; pos < k; ++pos) {
        for (int v = prev + 1; v < subset[pos]; ++v) index += binomial(m - v - 1, k - pos - 1);
        prev = subset[pos];
    }
    return index;
}

std::vector<int> subset_at(int m, int k, std::size_t index) {
    std::vector<int> out;
    out.reserve(k);
    int v = 0;
    for (int pos = 0; pos < k; ++pos) {
        while (true) {
            const std::size_t block = binomial(m - v - 1, k - pos - 1);
            if (index < block) break;
            index -= block;
            ++v;
        }
        out.push_back(v);
        ++v;
    }
    return out;
}

int shuffle_sign(std::span<const int> subset) {
    long inversions = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) inversions += subset[i] - static_cast<long>(i);
    return inversions % 2 == 0 ? 1 : -1;
}

template <class Scalar>
BasicExteriorVector<Scalar>::BasicExteriorVector(int grade, int ambient)
    : grade_(grade), ambient_(ambient) {
    if (ambient < 0 || grade < 0 || grade > ambient)
        throw GradeError("exterior vector grade must lie in [0, ambient]");
    coeffs_.assign(binomial(ambient, grade), Scalar(0));
}

template <class Scalar>
BasicExteriorVector<Scalar>::BasicExteriorVector(int grade, int ambient, std::vector<Scalar> coeffs)
    : grade_(grade), ambient_(ambient), coeffs_(std::move(coeffs)) {
    if (ambient < 0 || grade < 0 || grade > ambient)
        throw GradeError("exterior vector grade must lie in [0, ambient]");
    if (coeffs_.size() != binomial(ambient, grade))
        throw DimensionError("exterior vector needs C(m,k) coefficients");
}

template <class Scalar>
bool BasicExteriorVector<Scalar>::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c == 0; });
}

template <class Scalar>
BasicExteriorVector<Scalar>& BasicExteriorVector<Scalar>::operator+=(const BasicExteriorVector& o) {
    if (o.grade_ != grade_ || o.ambient_ != ambient_) throw GradeError("adding exterior vectors of different type");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

template <class Scalar>
BasicExteriorVector<Scalar>& BasicExteriorVector<Scalar>::operator-=(const BasicExteriorVector& o) {
    if (o.grade_ != grade_ || o.ambient_ != ambient_) throw GradeError("subtracting exterior vectors of different type");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

template <class Scalar>
BasicExteriorVector<Scalar>& BasicExteriorVector<Scalar>::operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

template class BasicExteriorVector<double>;
template class BasicExteriorVector<Rational>;

namespace {

double det_float(Mat m) {
    if (m.rows() == 0) return 1.0;
    return m.determinant();
}

Rational det_exact(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

template <class Vector>
int infer_ambient(std::span<const Vector> vectors, int ambient) {
    if (vectors.empty()) {
        if (ambient < 0) throw DimensionError("wedge of no vectors needs an explicit ambient dimension");
        return ambient;
    }
    const int m = static_cast<int>(vectors.front().size());
    if (ambient >= 0 && ambient != m) throw DimensionError("wedge input length differs from ambient dimension");
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != m) throw DimensionError("wedge inputs have mismatched lengths");
    if (static_cast<int>(vectors.size()) > m) throw GradeError("wedge grade exceeds ambient dimension");
    return m;
}

} // namespace

ExteriorVector wedge(std::span<const Vec> vectors, int ambient) {
    const int m = infer_ambient(vectors, ambient);
    const int j = static_cast<int>(vectors.size());
    ExteriorVector out(j, m);
    std::vector<double> coeffs(out.size());
    Mat minor(j, j);
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
        const auto rows = subset_at(m, j, s);
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c) minor(r, c) = vectors[c][rows[r]];
        coeffs[s] = det_float(minor);
    }
    return ExteriorVector(j, m, std::move(coeffs));
}

ExteriorVector wedge(std::initializer_list<Vec> vectors) {
    return wedge(std::span<const Vec>(vectors.begin(), vectors.size()));
}

ExactExteriorVector wedge(std::span<const RVec> vectors, int ambient) {
    const int m = infer_ambient(vectors, ambient);
    const int j = static_cast<int>(vectors.size());
    std::vector<Rational> coeffs(binomial(m, j));
    std::vector<std::vector<Rational>> minor(j, std::vector<Rational>(j));
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
        const auto rows = subset_at(m, j, s);
        for (int r = 0; r < j; ++r)
            for (int c = 0; c < j; ++c) minor[r][c] = vectors[c][rows[r]];
        coeffs[s] = det_exact(minor);
    }
    return ExactExteriorVector(j, m, std::move(coeffs));
}

namespace {

template <class Scalar>
Scalar pairing_impl(const BasicExteriorVector<Scalar>& a, const BasicExteriorVector<Scalar>& b) {
    const int m = a.ambient();
    if (b.ambient() != m) throw DimensionError("top pairing across different ambients");
    if (a.grade() + b.grade() != m) throw GradeError("top pairing needs grades summing to the ambient dimension");
    Scalar total = 0;
    std::vector<int> complement;
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (a[s] == 0) continue;
        const auto subset = subset_at(m, a.grade(), s);
        complement.clear();
        for (int v = 0, p = 0; v < m; ++v) {
            if (p < static_cast<int>(subset.size()) && subset[p] == v)
                ++p;
            else
                complement.push_back(v);
        }
        const Scalar term = a[s] * b[subset_index(m, complement)];
        if (shuffle_sign(subset) > 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

} // namespace

double top_pairing(const ExteriorVector& a, const ExteriorVector& b) { return pairing_impl(a, b); }
Rational top_pairing(const ExactExteriorVector& a, const ExactExteriorVector& b) { return pairing_impl(a, b); }

double norm(const ExteriorVector& v) {
    double s = 0;
    for (double c : v.coeffs()) s += c * c;
    return std::sqrt(s);
}

Vec as_vec(const ExteriorVector& v) {
    return Eigen::Map<const Vec>(v.coeffs().data(), static_cast<Eigen::Index>(v.size()));
}

ExteriorVector to_double(const ExactExteriorVector& v) {
    std::vector<double> c;
    c.reserve(v.size());
    for (const auto& q : v.coeffs()) c.push_back(q.get_d());
    return ExteriorVector(v.grade(), v.ambient(), std::move(c));
}

MatrixRank matrix_rank(const Mat& m, double tol) {
    MatrixRank out;
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    out.U = svd.matrixU();
    out.V = svd.matrixV();
    const double smax = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
    out.threshold = tol * smax * static_cast<double>(std::max(m.rows(), m.cols()));
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
        if (out.singular_values(i) > out.threshold) ++out.rank;
    return out;
}

namespace {

// Sign convention for functionals: the entry of largest magnitude is positive.
void canonical_sign(Vec& v) {
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (v(idx) < 0) v = -v;
}

template <class Scalar>
void check_uniform(std::span<const BasicExteriorVector<Scalar>> vs) {
    for (const auto& v : vs)
        if (v.grade() != vs.front().grade() || v.ambient() != vs.front().ambient())
            throw GradeError("rank_of_span needs exterior vectors of one grade and ambient");
}

} // namespace

RankCertificate rank_of_span(std::span<const ExteriorVector> vs, int expected_rank, double tol) {
    if (!(tol > 0)) throw InputError("rank tolerance must be positive");
    RankCertificate cert;
    cert.expected_rank = expected_rank;
    if (vs.empty()) {
        cert.deficient = expected_rank > 0;
        return cert;
    }
    check_uniform(vs);
    const auto cols = static_cast<Eigen::Index>(vs.front().size());
    cert.coefficient_dim = static_cast<int>(cols);
    if (expected_rank > cols) throw InputError("expected rank exceeds the coefficient dimension");
    Mat rows(static_cast<Eigen::Index>(vs.size()), cols);
    for (std::size_t i = 0; i < vs.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = as_vec(vs[i]).transpose();
    const auto mr = matrix_rank(rows, tol);
    cert.rank = mr.rank;
    cert.threshold = mr.threshold;
    cert.singular_values.assign(mr.singular_values.data(), mr.singular_values.data() + mr.singular_values.size());
    cert.deficient = cert.rank < expected_rank;
    if (cert.deficient) {
        Vec f = mr.V.col(cert.rank);
        canonical_sign(f);
        cert.conull = f;
    }
    return cert;
}

ExactRank exact_rank(const std::vector<RVec>& rows_in, int cols, bool want_kernel) {
    // Clear denominators row by row, then run Bareiss elimination over Z.
    std::vector<std::vector<mpz_class>> a;
    a.reserve(rows_in.size());
    for (const auto& row : rows_in) {
        if (static_cast<int>(row.size()) != cols) throw DimensionError("exact rank: ragged rows");
        mpz_class l = 1;
        for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> r(cols);
        for (int j = 0; j < cols; ++j) {
            mpq_class scaled = row[j] * mpq_class(l);
            r[j] = scaled.get_num();
        }
        a.push_back(std::move(r));
    }
    const int nrows = static_cast<int>(a.size());
    std::vector<int> pivots;
    mpz_class prev = 1;
    int rank = 0;
    for (int c = 0; c < cols && rank < nrows; ++c) {
        int p = rank;
        while (p < nrows && a[p][c] == 0) ++p;
        if (p == nrows) continue;
        std::swap(a[p], a[rank]);
        for (int i = rank + 1; i < nrows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                mpz_class t = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        pivots.push_back(c);
        ++rank;
    }
    ExactRank out;
    out.rank = rank;
    if (!want_kernel || rank == cols) return out;

    int free_col = 0;
    for (int c = 0, p = 0; c < cols; ++c) {
        if (p < rank && pivots[p] == c) {
            ++p;
            continue;
        }
        free_col = c;
        break;
    }
    RVec x(cols, Rational(0));
    x[free_col] = 1;
    for (int r = rank - 1; r >= 0; --r) {
        const int pc = pivots[r];
        Rational s = 0;
        for (int j = pc + 1; j < cols; ++j)
            if (x[j] != 0) s += Rational(a[r][j]) * x[j];
        x[pc] = -s / Rational(a[r][pc]);
    }
    // Primitive integer representative with a positive leading entry.
    mpz_class l = 1, g = 0;
    for (const auto& q : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (auto& q : x) {
        q *= Rational(l);
        q.canonicalize();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    }
    int sign = 1;
    for (const auto& q : x)
        if (q != 0) {
            sign = q > 0 ? 1 : -1;
            break;
        }
    for (auto& q : x) q = q / Rational(g) * sign;
    out.kernel_vector = std::move(x);
    return out;
}

RankCertificate rank_of_span(std::span<const ExactExteriorVector> vs, int expected_rank) {
    RankCertificate cert;
    cert.exact = true;
    cert.expected_rank = expected_rank;
    if (vs.empty()) {
        cert.deficient = expected_rank > 0;
        return cert;
    }
    check_uniform(vs);
    const int cols = static_cast<int>(vs.front().size());
    cert.coefficient_dim = cols;
    if (expected_rank > cols) throw InputError("expected rank exceeds the coefficient dimension");
    std::vector<RVec> rows;
    rows.reserve(vs.size());
    for (const auto& v : vs) rows.push_back(v.coeffs());
    const auto er = exact_rank(rows, cols, true);
    cert.rank = er.rank;
    cert.deficient = cert.rank < expected_rank;
    if (cert.deficient && er.kernel_vector) {
        cert.exact_conull = er.kernel_vector;
        Vec f(cols);
        for (int j = 0; j < cols; ++j) f(j) = (*er.kernel_vector)[j].get_d();
        f.normalize();
        cert.conull = f;
    }
    return cert;
}

Rational parse_rational(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    if (t.empty()) throw InputError("empty rational literal");
    // Accept integer, a/b, and finite decimal forms.
    const auto dot = t.find('.');
    Rational q;
    try {
        if (dot != std::string::npos && t.find('/') == std::string::npos) {
            std::string digits = t;
            digits.erase(dot, 1);
            const auto frac_len = t.size() - dot - 1;
            mpz_class den = 1;
            for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
            q = Rational(mpz_class(digits, 10), den);
        } else {
            q = Rational(t, 10);
        }
    } catch (const std::invalid_argument&) {
        throw InputError("malformed rational literal '" + text + "'");
    }
    if (q.get_den() == 0) throw InputError("rational literal with zero denominator '" + text + "'");
    q.canonicalize();
    return q;
}

} // namespace hingekit
