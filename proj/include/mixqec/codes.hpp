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

#ifndef MIXQEC_CODES_HPP
#define MIXQEC_CODES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mixqec/quantum_core.hpp"

namespace mixqec {

/// A single-qubit unitary on `target`, fired only on basis states where every
/// control reads its polarity.
struct Gate {
    int target = 0;
    ComplexMatrix unitary;
    std::vector<Control> controls;

    static Gate x(int target, std::vector<Control> controls = {});
    /// Throws std::invalid_argument when the gate is malformed for an n-qubit register.
    void validate(int n_qubits) const;
    bool is_controlled_x() const;
    Gate adjoint() const;
    LocalOp compile(int n_qubits) const { return LocalOp(n_qubits, target, unitary, controls); }
};

class Circuit {
   public:
    explicit Circuit(int n_qubits = 1);

    int n_qubits() const { return n_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    size_t size() const { return gates_.size(); }

    Circuit &append(Gate g);
    Circuit &append(const Circuit &c);
    Circuit &cnot(int control, int target);

    bool is_permutation() const;
    /// Full 2^n x 2^n unitary. Intended for n <= 10.
    ComplexMatrix matrix() const;
    void apply(StateVector &s) const;
    std::vector<LocalOp> compile() const;
    /// Same register widened to `n_qubits` (new qubits appended after the old ones).
    Circuit widened(int n_qubits) const;

   private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

/// Reverses the gate order and conjugate-transposes each unitary.
Circuit inverse(const Circuit &c);

enum class ChannelFamily { bitflip, depolarizing };

std::string_view family_name(ChannelFamily f);
ChannelFamily parse_family(std::string_view name);

/// Syndromes are packed with ancilla qubit 1 in the most significant of the
/// n-1 low bits, matching the basis-index convention of the full register.
uint32_t ancilla_bits(int n_qubits, uint64_t basis_index);
std::vector<Control> syndrome_controls(int n_qubits, uint32_t syndrome);

/// A complete code instance.
///
/// The pipeline is encoder -> main errors -> decoder -> recovery, with the
/// initialization noise acting on the ancillas before the encoder.
/// `encoder` includes any prepended inverse recovery; `decoder` always undoes
/// the bare encoding (for concatenated codes it also carries the inner
/// recoveries and the outer decode).
struct CodeSpec {
    int n_qubits = 1;
    int message_index = 0;
    Circuit encoder;
    Circuit decoder;
    Circuit recovery;
    bool augmented = false;
    ChannelFamily family = ChannelFamily::bitflip;
    std::string label;

    int ancilla_count() const { return n_qubits - 1; }
    /// Throws std::invalid_argument when the structural invariants fail.
    void validate() const;
};

/// Map syndrome -> 2x2 correction on the message qubit.
struct RecoveryTable {
    int n_qubits = 1;
    std::map<uint32_t, ComplexMatrix> corrections;

    /// One multi-controlled gate per syndrome whose correction is not the identity.
    Circuit to_circuit() const;
    /// Full matrix acting on the register; identity on unlisted syndromes.
    ComplexMatrix matrix() const;
};

/// A single-qubit error E inserted after encoding.
struct LocalError {
    int qubit = 0;
    ComplexMatrix unitary;
};

/// Propagates each error through encoder, error, inverse encoder, reads off the
/// syndrome and residual, and tabulates the inverse residual. Throws
/// std::runtime_error on a syndrome collision with inequivalent residuals or on
/// an error that does not yield a definite syndrome.
RecoveryTable derive_recovery(const Circuit &encoder, const std::vector<LocalError> &errors);

/// Reads the recovery circuit back as a table. Requires every gate to target the
/// message qubit with controls on all ancillas.
RecoveryTable recovery_table_of(const Circuit &recovery);

/// 2t+1 qubit bit-flip repetition code, 1 <= t <= 4.
CodeSpec repetition_code(int t);
/// [[5,1,3]] code from the cyclic XZZXI generators with derived recovery.
CodeSpec perfect5_code();
/// Prepends the inverse recovery before the encoder. Throws on double augmentation.
CodeSpec augment(const CodeSpec &code);

enum class ConcatVariant { unaugmented, top_level, full };
/// Two-level 3-qubit bit-flip code on 9 qubits.
CodeSpec concatenated3(ConcatVariant variant);

/// Standard labels: rep3, rep5, rep7, rep9, perfect5 (optionally
/// "+aug") and concat3-unaug, concat3-top, concat3-full.
CodeSpec code_from_label(std::string_view label);
std::vector<std::string> standard_labels();
/// Same code with a different main-error channel.
CodeSpec with_family(CodeSpec code, ChannelFamily family);

}  // namespace mixqec

#endif
