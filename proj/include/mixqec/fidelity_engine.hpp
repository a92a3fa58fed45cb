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

#ifndef MIXQEC_FIDELITY_ENGINE_HPP
#define MIXQEC_FIDELITY_ENGINE_HPP

#include <cstdint>
#include <vector>

#include "mixqec/bipoly.hpp"
#include "mixqec/codes.hpp"

namespace mixqec {

/// W[j][k]: summed per-pattern fidelity weight (1/4) sum_s |Tr K_s|^2 over all
/// patterns with j flipped ancillas and k nontrivial main errors.
class WeightHistogram {
   public:
    WeightHistogram(int ancillas, int qubits);

    int ancillas() const { return ancillas_; }
    int qubits() const { return qubits_; }
    double &at(int j, int k) { return cells_[index(j, k)]; }
    double at(int j, int k) const { return cells_[index(j, k)]; }
    void merge(const WeightHistogram &other);

   private:
    size_t index(int j, int k) const { return static_cast<size_t>(j * (qubits_ + 1) + k); }
    int ancillas_;
    int qubits_;
    std::vector<double> cells_;
};

enum class PropagationPath {
    automatic,    // permutation path when every gate and error is a (controlled) X
    generic,      // state-vector propagation
    permutation,  // basis-state tracking; throws if not applicable
};

struct EngineOptions {
    int workers = 1;
    PropagationPath path = PropagationPath::automatic;
};

/// Number of (initial flip, main error) patterns enumerated for a code.
uint64_t pattern_count(const CodeSpec &code);
bool permutation_path_applicable(const CodeSpec &code);

/// Enumerates every error pattern. Patterns are split into one chunk per
/// initial-flip string and chunk histograms are merged in chunk order, so the
/// result does not depend on the worker count.
WeightHistogram weight_histogram(const CodeSpec &code, const EngineOptions &options = {});

/// sum_{j,k} W[j][k] (q/2)^j (1-q/2)^(Na-j) e_k(p)
BiPoly polynomial_from_histogram(const WeightHistogram &w, ChannelFamily family);

/// Exact channel fidelity F_C(p, q) of the effective message-qubit channel.
BiPoly fidelity_polynomial(const CodeSpec &code, const EngineOptions &options = {});

/// Direct density-matrix evaluation of F_C at one point: the message qubit is
/// maximally entangled with a reference, the ancillas start in rho_q, every
/// main error is applied as a Kraus map, and the overlap with the maximally
/// entangled state is returned.
double oracle_fidelity(const CodeSpec &code, double p, double q);

/// Channel fidelity of sending the qubit through the main channel unprotected.
double unencoded_baseline(ChannelFamily family, double p);

}  // namespace mixqec

#endif
