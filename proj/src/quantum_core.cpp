// Copyright 2026 The mixqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mixqec/quantum_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mixqec {

namespace {

void require_probability(double x, const char *name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shape mismatch");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("entry count does not match rows*cols");
    }
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim, dim);
    for (size_t k = 0; k < dim; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (size_t k = 0; k < diag.size(); k++) {
        m(k, k) = diag[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_2x2(Complex m00, Complex m01, Complex m10, Complex m11) {
    return ComplexMatrix(2, 2, {m00, m01, m10, m11});
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (size_t k = 0; k < std::min(rows_, cols_); k++) {
        t += (*this)(k, k);
    }
    return t;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const {
    if (cols_ != other.rows_) {
        throw std::invalid_argument("matrix product dimension mismatch");
    }
    ComplexMatrix out(rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t k = 0; k < cols_; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex{}) {
                continue;
            }
            const Complex *src = other.row(k);
            Complex *dst = out.row(r);
            for (size_t c = 0; c < other.cols_; c++) {
                dst[c] += a * src[c];
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &other) const {
    ComplexMatrix out = *this;
    out += other;
    return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other);
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &other) const {
    require_same_shape(*this, other);
    ComplexMatrix out = *this;
    for (size_t k = 0; k < entries_.size(); k++) {
        out.entries_[k] -= other.entries_[k];
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scale) const {
    ComplexMatrix out = *this;
    for (auto &e : out.entries_) {
        e *= scale;
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b);
    double worst = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (size_t k = 0; k < ea.size(); k++) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return m.is_square() && max_abs_diff(m, m.adjoint()) <= tol;
}

bool equal_up_to_phase(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    require_same_shape(a, b);
    // Pick the phase from the largest entry of b.
    auto ea = a.entries();
    auto eb = b.entries();
    size_t best = 0;
    for (size_t k = 1; k < eb.size(); k++) {
        if (std::abs(eb[k]) > std::abs(eb[best])) {
            best = k;
        }
    }
    if (std::abs(eb[best]) <= tol) {
        return max_abs_diff(a, b) <= tol;
    }
    if (std::abs(ea[best]) <= tol) {
        return false;
    }
    Complex phase = ea[best] / eb[best];
    phase /= std::abs(phase);
    return max_abs_diff(a, b * phase) <= tol;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            Complex s = a(ar, ac);
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

const ComplexMatrix &pauli_i() {
    static const ComplexMatrix m = ComplexMatrix::from_2x2(1, 0, 0, 1);
    return m;
}
const ComplexMatrix &pauli_x() {
    static const ComplexMatrix m = ComplexMatrix::from_2x2(0, 1, 1, 0);
    return m;
}
const ComplexMatrix &pauli_y() {
    static const ComplexMatrix m = ComplexMatrix::from_2x2(0, Complex(0, -1), Complex(0, 1), 0);
    return m;
}
const ComplexMatrix &pauli_z() {
    static const ComplexMatrix m = ComplexMatrix::from_2x2(1, 0, 0, -1);
    return m;
}

int qubit_count_for_dim(size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    int n = 0;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

LocalOp::LocalOp(int n_qubits, int target, const ComplexMatrix &op, std::span<const Control> controls)
    : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24) {
        throw std::invalid_argument("register size out of range");
    }
    if (target < 0 || target >= n_qubits) {
        throw std::invalid_argument("target qubit out of range");
    }
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("local operator must be 2x2");
    }
    auto bit_of = [&](int q) { return uint32_t{1} << (n_qubits - 1 - q); };
    target_bit_ = bit_of(target);
    m_ = {op(0, 0), op(0, 1), op(1, 0), op(1, 1)};

    uint32_t mask = static_cast<uint32_t>(target_bit_);
    uint32_t want = 0;
    for (const auto &c : controls) {
        if (c.qubit < 0 || c.qubit >= n_qubits || c.qubit == target) {
            throw std::invalid_argument("invalid control qubit");
        }
        uint32_t b = bit_of(c.qubit);
        if (mask & b) {
            throw std::invalid_argument("duplicate control qubit");
        }
        mask |= b;
        if (c.polarity) {
            want |= b;
        }
    }
    // Enumerate the free bits by subset iteration over the complement mask.
    uint32_t full = (n_qubits == 32) ? ~uint32_t{0} : ((uint32_t{1} << n_qubits) - 1);
    uint32_t free = full & ~mask;
    uint32_t sub = 0;
    do {
        lows_.push_back(sub | want);
        sub = (sub - free) & free;
    } while (sub != 0);
    std::sort(lows_.begin(), lows_.end());
}

void LocalOp::apply(std::span<Complex> vec) const {
    for (uint32_t lo : lows_) {
        size_t hi = lo | target_bit_;
        Complex a = vec[lo];
        Complex b = vec[hi];
        vec[lo] = m_[0] * a + m_[1] * b;
        vec[hi] = m_[2] * a + m_[3] * b;
    }
}

void LocalOp::apply_left(ComplexMatrix &rho) const {
    size_t n = rho.cols();
    for (uint32_t lo : lows_) {
        Complex *r0 = rho.row(lo);
        Complex *r1 = rho.row(lo | target_bit_);
        for (size_t c = 0; c < n; c++) {
            Complex a = r0[c];
            Complex b = r1[c];
            r0[c] = m_[0] * a + m_[1] * b;
            r1[c] = m_[2] * a + m_[3] * b;
        }
    }
}

void LocalOp::apply_right_adjoint(ComplexMatrix &rho) const {
    Complex c00 = std::conj(m_[0]), c01 = std::conj(m_[1]);
    Complex c10 = std::conj(m_[2]), c11 = std::conj(m_[3]);
    for (size_t r = 0; r < rho.rows(); r++) {
        Complex *row = rho.row(r);
        for (uint32_t lo : lows_) {
            size_t hi = lo | target_bit_;
            Complex a = row[lo];
            Complex b = row[hi];
            row[lo] = a * c00 + b * c01;
            row[hi] = a * c10 + b * c11;
        }
    }
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits), amplitudes_(size_t{1} << n_qubits) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (size_t{1} << n_qubits)) {
        throw std::invalid_argument("state vector length must be 2^n");
    }
}

StateVector StateVector::basis(int n_qubits, uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw std::invalid_argument("basis index out of range");
    }
    s.amplitudes_[0] = 0;
    s.amplitudes_[index] = 1;
    return s;
}

double StateVector::norm() const {
    double t = 0;
    for (const auto &a : amplitudes_) {
        t += std::norm(a);
    }
    return std::sqrt(t);
}

DensityMatrix DensityMatrix::checked(ComplexMatrix m) {
    if (!m.is_square()) {
        throw std::invalid_argument("density matrix must be square");
    }
    qubit_count_for_dim(m.rows());
    DensityMatrix d(std::move(m));
    if (d.trace_deviation() > 1e-12) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
    if (d.hermiticity_deviation() > 1e-12) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (d.min_eigenvalue() < -1e-10) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    return d;
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    ComplexMatrix m(psi.size(), psi.size());
    for (size_t r = 0; r < psi.size(); r++) {
        for (size_t c = 0; c < psi.size(); c++) {
            m(r, c) = psi[r] * std::conj(psi[c]);
        }
    }
    return checked(std::move(m));
}

double DensityMatrix::trace_deviation() const {
    return std::abs(m_.trace() - 1.0);
}

double DensityMatrix::hermiticity_deviation() const {
    return max_abs_diff(m_, m_.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::MatrixXcd e(m_.rows(), m_.cols());
    for (size_t r = 0; r < m_.rows(); r++) {
        for (size_t c = 0; c < m_.cols(); c++) {
            e(r, c) = m_(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, std::optional<std::vector<double>> weights,
                           double tol)
    : operators_(std::move(operators)), weights_(std::move(weights)) {
    if (operators_.empty()) {
        throw std::invalid_argument("channel needs at least one Kraus operator");
    }
    dim_ = operators_.front().rows();
    for (const auto &k : operators_) {
        if (k.rows() != dim_ || k.cols() != dim_) {
            throw std::invalid_argument("Kraus operators must share one square shape");
        }
    }
    if (weights_ && weights_->size() != operators_.size()) {
        throw std::invalid_argument("one weight per Kraus operator required");
    }
    if (completeness_deviation() > tol) {
        throw std::invalid_argument("Kraus operators violate completeness");
    }
}

double KrausChannel::completeness_deviation() const {
    ComplexMatrix sum(dim_, dim_);
    for (const auto &k : operators_) {
        sum += k.adjoint() * k;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(dim_));
}

DensityMatrix rho_q(double q) {
    require_probability(q, "q");
    std::array<Complex, 2> d{1.0 - q / 2, q / 2};
    return DensityMatrix::checked(ComplexMatrix::diagonal(d));
}

KrausChannel bitflip_init_channel(double q) {
    require_probability(q, "q");
    return KrausChannel({pauli_i() * std::sqrt(1 - q / 2), pauli_x() * std::sqrt(q / 2)},
                        std::vector<double>{1 - q / 2, q / 2});
}

KrausChannel main_bitflip_channel(double p) {
    require_probability(p, "p");
    return KrausChannel({pauli_i() * std::sqrt(1 - p), pauli_x() * std::sqrt(p)}, std::vector<double>{1 - p, p});
}

KrausChannel depolarizing_channel(double p) {
    require_probability(p, "p");
    double e = std::sqrt(p / 4);
    return KrausChannel({pauli_i() * std::sqrt(1 - 3 * p / 4), pauli_x() * e, pauli_y() * e, pauli_z() * e},
                        std::vector<double>{1 - 3 * p / 4, p / 4, p / 4, p / 4});
}

double channel_fidelity(const KrausChannel &c) {
    int n = qubit_count_for_dim(c.dim());
    double total = 0;
    for (const auto &k : c.operators()) {
        total += std::norm(k.trace());
    }
    return total / std::ldexp(1.0, 2 * n);
}

DensityMatrix apply_channel(const KrausChannel &c, const DensityMatrix &rho) {
    if (c.dim() != rho.dim()) {
        throw std::invalid_argument("channel and state dimensions differ");
    }
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const auto &k : c.operators()) {
        out += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix::trusted(std::move(out));
}

void apply_local_channel(const KrausChannel &c, int n_qubits, int target, ComplexMatrix &rho) {
    if (c.dim() != 2) {
        throw std::invalid_argument("local channel must act on one qubit");
    }
    if (c.operators().size() == 1) {
        LocalOp(n_qubits, target, c.operators()[0]).conjugate(rho);
        return;
    }
    ComplexMatrix acc(rho.rows(), rho.cols());
    for (const auto &k : c.operators()) {
        ComplexMatrix term = rho;
        LocalOp(n_qubits, target, k).conjugate(term);
        acc += term;
    }
    rho = std::move(acc);
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace must keep at least one qubit");
    }
    int n = rho.n_qubits();
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.front() < 0 || kept.back() >= n) {
        throw std::invalid_argument("invalid qubit in keep set");
    }
    std::vector<int> traced;
    for (int q = 0; q < n; q++) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    auto bit_of = [&](int q) { return size_t{1} << (n - 1 - q); };
    // Scatter a compact index over a list of qubits into a full basis index.
    auto scatter = [&](size_t compact, const std::vector<int> &qubits) {
        size_t full = 0;
        for (size_t k = 0; k < qubits.size(); k++) {
            if ((compact >> (qubits.size() - 1 - k)) & 1) {
                full |= bit_of(qubits[k]);
            }
        }
        return full;
    };
    size_t dk = size_t{1} << kept.size();
    size_t dt = size_t{1} << traced.size();
    std::vector<size_t> kept_idx(dk), traced_idx(dt);
    for (size_t k = 0; k < dk; k++) {
        kept_idx[k] = scatter(k, kept);
    }
    for (size_t t = 0; t < dt; t++) {
        traced_idx[t] = scatter(t, traced);
    }
    ComplexMatrix out(dk, dk);
    const ComplexMatrix &m = rho.matrix();
    for (size_t r = 0; r < dk; r++) {
        for (size_t c = 0; c < dk; c++) {
            Complex s = 0;
            for (size_t t = 0; t < dt; t++) {
                s += m(kept_idx[r] | traced_idx[t], kept_idx[c] | traced_idx[t]);
            }
            out(r, c) = s;
        }
    }
    return DensityMatrix::trusted(std::move(out));
}

}  // namespace mixqec
