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

#ifndef MIXQEC_ENCODER_OPT_HPP
#define MIXQEC_ENCODER_OPT_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mixqec/codes.hpp"

namespace mixqec {

struct EulerAngles {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    bool operator==(const EulerAngles &) const = default;
};

/// Rz(alpha) Ry(beta) Rz(gamma)
ComplexMatrix zyz_unitary(const EulerAngles &a);
/// Angles with zyz_unitary(result) equal to u up to global phase.
EulerAngles zyz_angles(const ComplexMatrix &u);

/// One single-qubit unitary on the message per ancilla bit-string, each
/// controlled on its own string. 3 * 2^(n-1) real parameters.
class ControlledUnitaryFamily {
   public:
    explicit ControlledUnitaryFamily(int n_qubits);
    ControlledUnitaryFamily(int n_qubits, std::vector<EulerAngles> angles);
    static ControlledUnitaryFamily from_parameters(int n_qubits, std::span<const double> params);

    int n_qubits() const { return n_qubits_; }
    size_t parameter_count() const { return 3 * angles_.size(); }
    const std::vector<EulerAngles> &angles() const { return angles_; }
    std::vector<double> parameters() const;
    bool operator==(const ControlledUnitaryFamily &) const = default;

   private:
    int n_qubits_;
    std::vector<EulerAngles> angles_;
};

Circuit family_to_circuit(const ControlledUnitaryFamily &f);

/// The family that reproduces the inverse of the code's recovery.
ControlledUnitaryFamily inverse_recovery_family(const CodeSpec &code);

/// Unaugmented code with family_to_circuit(f) inserted before its encoder.
CodeSpec with_family_prefix(const CodeSpec &code, const ControlledUnitaryFamily &f);

/// oracle_fidelity of the code with the family prepended to the encoder.
double objective(const CodeSpec &code, const ControlledUnitaryFamily &f, double p, double q);

/// Precomputed form of `objective` at fixed (p, q).
///
/// The family only acts inside each ancilla branch, so the fidelity is a
/// quadratic form in the per-branch U_a entries:
///   F = 1/4 sum_a w_a sum U_a[x',x] conj(U_a[y',y]) D_a[x',y'](x, y)
/// where D_a[x',y'] is the reduced message operator produced by propagating
/// C|x',a><y',a|C^dagger through errors, decoder and recovery.
class CompiledObjective {
   public:
    CompiledObjective(const CodeSpec &code, double p, double q);
    double operator()(const ControlledUnitaryFamily &f) const;
    double operator()(std::span<const double> params) const;
    int n_qubits() const { return n_qubits_; }

   private:
    int n_qubits_;
    std::vector<double> branch_weight_;
    // [a][x'][y'][x][y] flattened.
    std::vector<Complex> transfer_;
};

struct OptimizeOptions {
    int restarts = 8;
    uint64_t seed = 1;
    int workers = 1;
    long max_evaluations = 100000;
    double diameter_tol = 1e-8;
    double initial_step = 0.25;
};

struct OptimizationResult {
    ControlledUnitaryFamily best;
    double fidelity = 0;
    int best_restart = 0;
    long evaluations = 0;
    std::vector<double> restart_fidelities;
};

/// Multi-start derivative-free simplex maximization of the objective. Restart 0
/// starts from zero angles, restart 1 from the inverse recovery, the rest from
/// seeded uniform angles. Ties go to the lowest restart index.
OptimizationResult optimize(const CodeSpec &code, double p, double q, const OptimizeOptions &options = {});

/// Nelder-Mead minimization. Stops when the simplex diameter drops below
/// `diameter_tol` or after `max_evaluations` calls.
struct SimplexResult {
    std::vector<double> x;
    double value = 0;
    long evaluations = 0;
};
/// Minimizes f. The budget is checked once per iteration, so the count may
/// exceed max_evaluations by at most dim + 2.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)> &f, std::vector<double> x0,
                          double step, double diameter_tol, long max_evaluations);

}  // namespace mixqec

#endif
