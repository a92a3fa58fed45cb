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

#ifndef MIXQEC_QUANTUM_CORE_HPP
#define MIXQEC_QUANTUM_CORE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mixqec {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// 2x2 matrix from its entries in row-major order.
    static ComplexMatrix from_2x2(Complex m00, Complex m01, Complex m10, Complex m11);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(size_t r, size_t c) { return entries_[r * cols_ + c]; }
    const Complex &operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }
    std::span<Complex> entries() { return entries_; }
    std::span<const Complex> entries() const { return entries_; }
    Complex *row(size_t r) { return entries_.data() + r * cols_; }
    const Complex *row(size_t r) const { return entries_.data() + r * cols_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix operator*(const ComplexMatrix &other) const;
    ComplexMatrix operator+(const ComplexMatrix &other) const;
    ComplexMatrix operator-(const ComplexMatrix &other) const;
    ComplexMatrix operator*(Complex scale) const;
    ComplexMatrix &operator+=(const ComplexMatrix &other);
    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise |a - b|. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
bool is_unitary(const ComplexMatrix &m, double tol = 1e-12);
bool is_hermitian(const ComplexMatrix &m, double tol = 1e-12);
/// True when a = e^{i phi} b for some phase, within tol.
bool equal_up_to_phase(const ComplexMatrix &a, const ComplexMatrix &b, double tol = 1e-12);

/// Kronecker product; the first factor occupies the most significant index bits.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

const ComplexMatrix &pauli_i();
const ComplexMatrix &pauli_x();
const ComplexMatrix &pauli_y();
const ComplexMatrix &pauli_z();

/// Returns log2(dim) or throws std::invalid_argument when dim is not a power of two.
int qubit_count_for_dim(size_t dim);

/// A control condition: the gate fires only when `qubit` reads `polarity`.
struct Control {
    int qubit;
    bool polarity = true;
    bool operator==(const Control &) const = default;
};

/// A (possibly controlled, possibly non-unitary) 2x2 operator placed on an
/// n-qubit register. Qubit 0 is the most significant bit of basis indices.
///
/// The index pairs it touches are computed once at construction so that
/// repeated application only visits the controlled subspace.
class LocalOp {
   public:
    LocalOp(int n_qubits, int target, const ComplexMatrix &op, std::span<const Control> controls = {});

    int n_qubits() const { return n_qubits_; }
    /// v <- M v
    void apply(std::span<Complex> vec) const;
    /// rho <- M rho
    void apply_left(ComplexMatrix &rho) const;
    /// rho <- rho M^dagger
    void apply_right_adjoint(ComplexMatrix &rho) const;
    /// rho <- M rho M^dagger
    void conjugate(ComplexMatrix &rho) const {
        apply_left(rho);
        apply_right_adjoint(rho);
    }

   private:
    int n_qubits_;
    size_t target_bit_;
    std::array<Complex, 4> m_;
    std::vector<uint32_t> lows_;
};

class StateVector {
   public:
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, std::vector<Complex> amplitudes);
    static StateVector basis(int n_qubits, uint64_t index);

    int n_qubits() const { return n_qubits_; }
    size_t dim() const { return amplitudes_.size(); }
    std::span<Complex> amplitudes() { return amplitudes_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex &operator[](size_t i) { return amplitudes_[i]; }
    const Complex &operator[](size_t i) const { return amplitudes_[i]; }
    double norm() const;
    void apply(const LocalOp &op) { op.apply(amplitudes_); }

   private:
    int n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Unit-trace Hermitian positive semidefinite matrix.
class DensityMatrix {
   public:
    /// Validates trace, Hermiticity and spectrum; throws std::invalid_argument.
    static DensityMatrix checked(ComplexMatrix m);
    /// Skips validation. For states produced by trace-preserving propagation.
    static DensityMatrix trusted(ComplexMatrix m);
    static DensityMatrix pure(std::span<const Complex> psi);

    size_t dim() const { return m_.rows(); }
    int n_qubits() const { return qubit_count_for_dim(m_.rows()); }
    const ComplexMatrix &matrix() const { return m_; }
    Complex operator()(size_t r, size_t c) const { return m_(r, c); }

    double trace_deviation() const;
    double hermiticity_deviation() const;
    double min_eigenvalue() const;

   private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Finite list of Kraus operators. Construction enforces completeness.
class KrausChannel {
   public:
    explicit KrausChannel(std::vector<ComplexMatrix> operators, std::optional<std::vector<double>> weights = {},
                          double tol = 1e-12);

    size_t dim() const { return dim_; }
    const std::vector<ComplexMatrix> &operators() const { return operators_; }
    /// Probability carried by each operator when the channel is a mixture of unitaries.
    const std::optional<std::vector<double>> &weights() const { return weights_; }
    /// max |sum_j K_j^dagger K_j - I|
    double completeness_deviation() const;

   private:
    size_t dim_;
    std::vector<ComplexMatrix> operators_;
    std::optional<std::vector<double>> weights_;
};

/// diag(1 - q/2, q/2)
DensityMatrix rho_q(double q);
/// {sqrt(1-q/2) I, sqrt(q/2) X}; takes |0><0| to rho_q(q).
KrausChannel bitflip_init_channel(double q);
/// {sqrt(1-p) I, sqrt(p) X}
KrausChannel main_bitflip_channel(double p);
/// {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
KrausChannel depolarizing_channel(double p);

/// (1/4^n) sum_k |Tr K_k|^2
double channel_fidelity(const KrausChannel &c);

DensityMatrix apply_channel(const KrausChannel &c, const DensityMatrix &rho);

/// Applies a single-qubit channel to qubit `target` of an n-qubit operator in place.
void apply_local_channel(const KrausChannel &c, int n_qubits, int target, ComplexMatrix &rho);

/// Traces out every qubit not in `keep`. The kept qubits retain their relative order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

}  // namespace mixqec

#endif
