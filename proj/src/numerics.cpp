// Copyright 2026 The duality-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "duality/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "duality/errors.hpp"

namespace duality {

namespace tol {
Profile profile(std::string_view name) {
    if (name == "default")
        return kDefaultProfile;
    if (name == "strict")
        return kStrictProfile;
    throw UsageError("unknown tolerance profile '" + std::string(name) + "'");
}
} // namespace tol

std::size_t max_dim() {
    const char *env = std::getenv("DUALITY_SIM_MAX_DIM");
    if (env == nullptr || *env == '\0')
        return kDefaultMaxDim;
    char *end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || value == 0)
        throw ParameterError(std::string("DUALITY_SIM_MAX_DIM is not a "
                                         "positive integer: ") +
                             env);
    return static_cast<std::size_t>(value);
}

void check_capacity(std::size_t dim, const char *what) {
    const std::size_t cap = max_dim();
    if (dim > cap)
        throw CapacityError(std::string(what) + " needs dimension " +
                            std::to_string(dim) + ", cap is " +
                            std::to_string(cap));
}

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
        throw DimensionError("operator must be square and nonempty, got " +
                             std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()));
}

DenseOperator DenseOperator::identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return DenseOperator(Matrix::Identity(d, d));
}

DenseOperator DenseOperator::zero(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return DenseOperator(Matrix::Zero(d, d));
}

DenseOperator DenseOperator::adjoint() const {
    return DenseOperator(matrix_.adjoint());
}

bool DenseOperator::is_unitary(double tolerance) const {
    const Matrix gram = matrix_.adjoint() * matrix_;
    return (gram - Matrix::Identity(gram.rows(), gram.cols()))
               .cwiseAbs()
               .maxCoeff() <= tolerance;
}

bool DenseOperator::is_hermitian(double tolerance) const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool DenseOperator::is_finite() const { return matrix_.allFinite(); }

Vector DenseOperator::apply(const Vector &v) const {
    if (v.size() != matrix_.cols())
        throw DimensionError("vector of length " + std::to_string(v.size()) +
                             " against operator of dim " +
                             std::to_string(dim()));
    return matrix_ * v;
}

namespace {
void require_same_dim(const DenseOperator &a, const DenseOperator &b) {
    if (a.dim() != b.dim())
        throw DimensionError("operator dims differ: " +
                             std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()));
}
} // namespace

DenseOperator operator*(const DenseOperator &a, const DenseOperator &b) {
    require_same_dim(a, b);
    return DenseOperator(a.matrix_ * b.matrix_);
}

DenseOperator operator+(const DenseOperator &a, const DenseOperator &b) {
    require_same_dim(a, b);
    return DenseOperator(a.matrix_ + b.matrix_);
}

DenseOperator operator-(const DenseOperator &a, const DenseOperator &b) {
    require_same_dim(a, b);
    return DenseOperator(a.matrix_ - b.matrix_);
}

DenseOperator operator*(Complex s, const DenseOperator &a) {
    return DenseOperator(s * a.matrix_);
}

double max_abs_diff(const DenseOperator &a, const DenseOperator &b) {
    require_same_dim(a, b);
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Exact evolution and norms

DenseOperator expm_hermitian(const DenseOperator &h, double t) {
    if (!h.is_finite() || !std::isfinite(t))
        throw NumericError("expm_hermitian: non-finite input");
    if (!h.is_hermitian())
        throw HermiticityError("expm_hermitian: input is not Hermitian");
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success)
        throw NumericError("expm_hermitian: eigendecomposition failed");
    const Eigen::VectorXd &lambda = eig.eigenvalues();
    Vector phases(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        phases[i] = std::polar(1.0, -lambda[i] * t);
    const Matrix &v = eig.eigenvectors();
    return DenseOperator(v * phases.asDiagonal() * v.adjoint());
}

double spectral_norm(const Matrix &a) {
    if (a.size() == 0)
        throw DimensionError("spectral_norm of an empty matrix");
    if (!a.allFinite())
        throw NumericError("spectral_norm: non-finite input");
    const Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().size() == 0 ? 0.0
                                            : svd.singularValues()(0);
}

DenseOperator tensor(const DenseOperator &a, const DenseOperator &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    check_capacity(da * db, "tensor");
    const auto ia = static_cast<Eigen::Index>(da);
    const auto ib = static_cast<Eigen::Index>(db);
    Matrix out(ia * ib, ia * ib);
    for (Eigen::Index i = 0; i < ia; ++i)
        for (Eigen::Index j = 0; j < ia; ++j)
            out.block(i * ib, j * ib, ib, ib) = a.matrix()(i, j) * b.matrix();
    return DenseOperator(std::move(out));
}

double fidelity(const Vector &a, const Vector &b) {
    if (a.size() != b.size())
        throw DimensionError("fidelity: length mismatch");
    const double na = a.squaredNorm();
    const double nb = b.squaredNorm();
    if (na == 0.0 || nb == 0.0)
        throw NumericError("fidelity of a zero vector");
    return std::norm(a.dot(b)) / (na * nb);
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DimensionError("fit_loglog_slope needs two or more paired points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw NumericError("fit_loglog_slope needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw NumericError("fit_loglog_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

// ---------------------------------------------------------------------------
// Statevector

namespace {
std::size_t product(const std::vector<std::size_t> &shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                           std::multiplies<>());
}
} // namespace

Statevector::Statevector(Vector amplitudes, std::vector<std::size_t> shape)
    : amps_(std::move(amplitudes)), shape_(std::move(shape)) {
    if (shape_.empty() ||
        std::find(shape_.begin(), shape_.end(), 0U) != shape_.end())
        throw DimensionError("register shape must be nonempty and positive");
    if (product(shape_) != static_cast<std::size_t>(amps_.size()))
        throw DimensionError("register shape product " +
                             std::to_string(product(shape_)) +
                             " != amplitude count " +
                             std::to_string(amps_.size()));
    if (!amps_.allFinite())
        throw NumericError("state has non-finite amplitudes");
    if (std::abs(amps_.norm() - 1.0) > tol::kNormalization)
        throw NormalizationError("state norm " + std::to_string(amps_.norm()) +
                                 " is not 1");
}

Statevector::Statevector(Vector amplitudes)
    : Statevector(amplitudes, {static_cast<std::size_t>(amplitudes.size())}) {}

Statevector Statevector::normalized(Vector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw NumericError("cannot normalize a zero or non-finite vector");
    amplitudes /= n;
    return Statevector(std::move(amplitudes));
}

Statevector Statevector::basis(std::vector<std::size_t> shape,
                               std::size_t index) {
    const std::size_t dim = product(shape);
    if (index >= dim)
        throw DimensionError("basis index out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return Statevector(std::move(v), std::move(shape));
}

Statevector Statevector::random(std::size_t dim, std::mt19937_64 &rng) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (auto &a : v)
        a = random_gaussian(rng);
    return normalized(std::move(v));
}

Statevector Statevector::tensor(const Statevector &other) const {
    check_capacity(size() * other.size(), "state tensor");
    Vector out(static_cast<Eigen::Index>(size() * other.size()));
    const auto m = static_cast<Eigen::Index>(other.size());
    for (Eigen::Index i = 0; i < amps_.size(); ++i)
        out.segment(i * m, m) = amps_[i] * other.amps_;
    std::vector<std::size_t> shape = shape_;
    shape.insert(shape.end(), other.shape_.begin(), other.shape_.end());
    return Statevector(std::move(out), std::move(shape));
}

Statevector::Split Statevector::split(std::size_t first,
                                      std::size_t count) const {
    if (count == 0 || first + count > shape_.size())
        throw DimensionError("register range out of bounds");
    Split s{1, 1, 1};
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        if (i < first)
            s.left *= shape_[i];
        else if (i < first + count)
            s.mid *= shape_[i];
        else
            s.right *= shape_[i];
    }
    return s;
}

void Statevector::apply(std::size_t first, std::size_t count,
                        const DenseOperator &u) {
    const Split s = split(first, count);
    if (u.dim() != s.mid)
        throw DimensionError("operator dim " + std::to_string(u.dim()) +
                             " does not match register dim " +
                             std::to_string(s.mid));
    const auto mid = static_cast<Eigen::Index>(s.mid);
    const auto right = static_cast<Eigen::Index>(s.right);
    const Matrix ut = u.matrix().transpose();
    for (std::size_t l = 0; l < s.left; ++l) {
        // Index within the slab is m·right + r: a column-major right×mid map.
        Eigen::Map<Matrix> slab(amps_.data() + static_cast<Eigen::Index>(l) *
                                                   mid * right,
                                right, mid);
        slab = (slab * ut).eval();
    }
}

void Statevector::apply_controlled(std::span<const Control> controls,
                                   std::size_t target,
                                   const DenseOperator &u) {
    const Split s = split(target, 1);
    if (u.dim() != s.mid)
        throw DimensionError("controlled operator does not match target");
    for (const Control &c : controls) {
        if (c.reg >= shape_.size() || c.reg == target)
            throw DimensionError("invalid control register");
        if (c.value >= shape_[c.reg])
            throw DimensionError("control value exceeds register dim");
    }
    // Strides of every register in the flat index.
    std::vector<std::size_t> stride(shape_.size());
    std::size_t acc = 1;
    for (std::size_t i = shape_.size(); i-- > 0;) {
        stride[i] = acc;
        acc *= shape_[i];
    }
    const auto mid = static_cast<Eigen::Index>(s.mid);
    const auto tstride = static_cast<Eigen::Index>(stride[target]);
    Vector slice(mid);
    for (std::size_t l = 0; l < s.left; ++l) {
        for (std::size_t r = 0; r < s.right; ++r) {
            const std::size_t base = (l * s.mid) * s.right + r;
            bool active = true;
            for (const Control &c : controls) {
                if ((base / stride[c.reg]) % shape_[c.reg] != c.value) {
                    active = false;
                    break;
                }
            }
            if (!active)
                continue;
            const auto b = static_cast<Eigen::Index>(base);
            for (Eigen::Index m = 0; m < mid; ++m)
                slice[m] = amps_[b + m * tstride];
            slice = u.matrix() * slice;
            for (Eigen::Index m = 0; m < mid; ++m)
                amps_[b + m * tstride] = slice[m];
        }
    }
}

void Statevector::reflect_zero(std::size_t first, std::size_t count) {
    const Split s = split(first, count);
    for (std::size_t l = 0; l < s.left; ++l)
        for (std::size_t r = 0; r < s.right; ++r)
            amps_[static_cast<Eigen::Index>((l * s.mid) * s.right + r)] *= -1.0;
}

Vector Statevector::project_trailing_zero(std::size_t first) const {
    if (first == 0 || first >= shape_.size())
        throw DimensionError("projection must keep and drop registers");
    const Split s = split(first, shape_.size() - first);
    Vector out(static_cast<Eigen::Index>(s.left));
    for (std::size_t l = 0; l < s.left; ++l)
        out[static_cast<Eigen::Index>(l)] =
            amps_[static_cast<Eigen::Index>(l * s.mid)];
    return out;
}

// ---------------------------------------------------------------------------
// Random generators

Complex random_gaussian(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

DenseOperator random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix z(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
            z(i, j) = random_gaussian(rng);
    const Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0)
            q.col(j) *= rjj / std::abs(rjj);
    }
    return DenseOperator(std::move(q));
}

DenseOperator random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix z(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
            z(i, j) = random_gaussian(rng);
    return DenseOperator(0.5 * (z + z.adjoint()));
}

} // namespace duality
