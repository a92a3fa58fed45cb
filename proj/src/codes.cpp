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

#include "mixqec/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mixqec {

namespace {

// Rounds entries that sit within 1e-12 of a Gaussian integer in {-1, 0, 1}^2.
ComplexMatrix snap(ComplexMatrix m) {
    auto snap_part = [](double v) {
        double r = std::round(v);
        return (std::abs(v - r) < 1e-12 && std::abs(r) <= 1) ? r : v;
    };
    for (auto &e : m.entries()) {
        e = Complex(snap_part(e.real()), snap_part(e.imag()));
    }
    return m;
}

bool is_identity_up_to_phase(const ComplexMatrix &m) {
    return equal_up_to_phase(m, pauli_i(), 1e-9);
}

ComplexMatrix hadamard() {
    double s = 1 / std::sqrt(2.0);
    return ComplexMatrix::from_2x2(s, s, s, -s);
}

// Pauli string with an overall phase i^phase.
struct PauliString {
    std::string ops;
    int phase = 0;

    PauliString operator*(const PauliString &o) const {
        PauliString out{ops, phase + o.phase};
        for (size_t k = 0; k < ops.size(); k++) {
            auto [c, ph] = mul(ops[k], o.ops[k]);
            out.ops[k] = c;
            out.phase += ph;
        }
        out.phase = ((out.phase % 4) + 4) % 4;
        return out;
    }

    static std::pair<char, int> mul(char a, char b) {
        if (a == 'I') return {b, 0};
        if (b == 'I') return {a, 0};
        if (a == b) return {'I', 0};
        // Cyclic XYZ products carry +i, anticyclic -i.
        static const std::string cyc = "XYZ";
        int ia = static_cast<int>(cyc.find(a));
        int ib = static_cast<int>(cyc.find(b));
        char c = cyc[static_cast<size_t>(3 - ia - ib)];
        return {c, ((ib - ia + 3) % 3 == 1) ? 1 : 3};
    }
};

const ComplexMatrix &pauli_matrix(char c) {
    switch (c) {
        case 'X':
            return pauli_x();
        case 'Y':
            return pauli_y();
        case 'Z':
            return pauli_z();
        default:
            return pauli_i();
    }
}

Gate toffoli(int c1, int c2, int target) {
    return Gate::x(target, {{c1, true}, {c2, true}});
}

}  // namespace

Gate Gate::x(int target, std::vector<Control> controls) {
    return Gate{target, pauli_x(), std::move(controls)};
}

void Gate::validate(int n_qubits) const {
    if (target < 0 || target >= n_qubits) {
        throw std::invalid_argument("gate target out of range");
    }
    if (unitary.rows() != 2 || unitary.cols() != 2 || !is_unitary(unitary, 1e-12)) {
        throw std::invalid_argument("gate unitary must be a 2x2 unitary");
    }
    std::vector<int> seen;
    for (const auto &c : controls) {
        if (c.qubit < 0 || c.qubit >= n_qubits || c.qubit == target) {
            throw std::invalid_argument("gate control out of range or equal to target");
        }
        if (std::find(seen.begin(), seen.end(), c.qubit) != seen.end()) {
            throw std::invalid_argument("duplicate gate control");
        }
        seen.push_back(c.qubit);
    }
}

bool Gate::is_controlled_x() const {
    return unitary == pauli_x();
}

Gate Gate::adjoint() const {
    return Gate{target, unitary.adjoint(), controls};
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24) {
        throw std::invalid_argument("circuit size out of range");
    }
}

Circuit &Circuit::append(Gate g) {
    g.validate(n_qubits_);
    gates_.push_back(std::move(g));
    return *this;
}

Circuit &Circuit::append(const Circuit &c) {
    if (c.n_qubits_ != n_qubits_) {
        throw std::invalid_argument("cannot append circuits of different width");
    }
    gates_.insert(gates_.end(), c.gates_.begin(), c.gates_.end());
    return *this;
}

Circuit &Circuit::cnot(int control, int target) {
    return append(Gate::x(target, {{control, true}}));
}

bool Circuit::is_permutation() const {
    return std::all_of(gates_.begin(), gates_.end(), [](const Gate &g) { return g.is_controlled_x(); });
}

ComplexMatrix Circuit::matrix() const {
    size_t dim = size_t{1} << n_qubits_;
    auto ops = compile();
    ComplexMatrix m(dim, dim);
    for (size_t col = 0; col < dim; col++) {
        StateVector s = StateVector::basis(n_qubits_, col);
        for (const auto &op : ops) {
            s.apply(op);
        }
        for (size_t r = 0; r < dim; r++) {
            m(r, col) = s[r];
        }
    }
    return m;
}

void Circuit::apply(StateVector &s) const {
    if (s.n_qubits() != n_qubits_) {
        throw std::invalid_argument("state and circuit widths differ");
    }
    for (const auto &g : gates_) {
        s.apply(g.compile(n_qubits_));
    }
}

std::vector<LocalOp> Circuit::compile() const {
    std::vector<LocalOp> ops;
    ops.reserve(gates_.size());
    for (const auto &g : gates_) {
        ops.push_back(g.compile(n_qubits_));
    }
    return ops;
}

Circuit Circuit::widened(int n_qubits) const {
    if (n_qubits < n_qubits_) {
        throw std::invalid_argument("cannot narrow a circuit");
    }
    Circuit out(n_qubits);
    out.gates_ = gates_;
    return out;
}

Circuit inverse(const Circuit &c) {
    Circuit out(c.n_qubits());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
        out.append(it->adjoint());
    }
    return out;
}

std::string_view family_name(ChannelFamily f) {
    return f == ChannelFamily::bitflip ? "bitflip" : "depolarizing";
}

ChannelFamily parse_family(std::string_view name) {
    if (name == "bitflip") {
        return ChannelFamily::bitflip;
    }
    if (name == "depolarizing") {
        return ChannelFamily::depolarizing;
    }
    throw std::invalid_argument("unknown channel family '" + std::string(name) + "'");
}

uint32_t ancilla_bits(int n_qubits, uint64_t basis_index) {
    return static_cast<uint32_t>(basis_index & ((uint64_t{1} << (n_qubits - 1)) - 1));
}

std::vector<Control> syndrome_controls(int n_qubits, uint32_t syndrome) {
    int na = n_qubits - 1;
    std::vector<Control> controls;
    for (int k = 1; k <= na; k++) {
        controls.push_back({k, ((syndrome >> (na - k)) & 1) != 0});
    }
    return controls;
}

void CodeSpec::validate() const {
    if (message_index != 0) {
        throw std::invalid_argument("message qubit must be qubit 0");
    }
    for (const Circuit *c : {&encoder, &decoder, &recovery}) {
        if (c->n_qubits() != n_qubits) {
            throw std::invalid_argument("circuit width differs from code size");
        }
        for (const auto &g : c->gates()) {
            g.validate(n_qubits);
        }
    }
    for (const auto &g : recovery.gates()) {
        if (g.target != message_index) {
            throw std::invalid_argument("recovery gates must act on the message qubit");
        }
        for (const auto &c : g.controls) {
            if (c.qubit == message_index) {
                throw std::invalid_argument("recovery gates must be controlled on ancillas only");
            }
        }
    }
}

Circuit RecoveryTable::to_circuit() const {
    Circuit c(n_qubits);
    for (const auto &[s, u] : corrections) {
        if (s == 0 || is_identity_up_to_phase(u)) {
            continue;
        }
        c.append(Gate{0, u, syndrome_controls(n_qubits, s)});
    }
    return c;
}

ComplexMatrix RecoveryTable::matrix() const {
    size_t dim = size_t{1} << n_qubits;
    auto msb = static_cast<uint32_t>(dim >> 1);
    ComplexMatrix m(dim, dim);
    for (uint32_t s = 0; s < msb; s++) {
        auto it = corrections.find(s);
        const ComplexMatrix &u = it == corrections.end() ? pauli_i() : it->second;
        for (uint32_t y = 0; y < 2; y++) {
            for (uint32_t x = 0; x < 2; x++) {
                m(y * msb | s, x * msb | s) = u(y, x);
            }
        }
    }
    return m;
}

RecoveryTable derive_recovery(const Circuit &encoder, const std::vector<LocalError> &errors) {
    int n = encoder.n_qubits();
    uint64_t msb = uint64_t{1} << (n - 1);
    auto enc = encoder.compile();
    auto dec = inverse(encoder).compile();
    bool saw_identity = false;
    RecoveryTable table{n, {}};

    for (const auto &err : errors) {
        LocalOp e(n, err.qubit, err.unitary);
        std::vector<StateVector> out;
        for (uint64_t x = 0; x < 2; x++) {
            StateVector s = StateVector::basis(n, x * msb);
            for (const auto &op : enc) s.apply(op);
            s.apply(e);
            for (const auto &op : dec) s.apply(op);
            out.push_back(std::move(s));
        }
        // Every surviving amplitude must share one ancilla string.
        std::optional<uint32_t> syndrome;
        for (const auto &s : out) {
            for (size_t i = 0; i < s.dim(); i++) {
                if (std::abs(s[i]) < 1e-9) continue;
                uint32_t a = ancilla_bits(n, i);
                if (syndrome && *syndrome != a) {
                    throw std::runtime_error("error does not produce a definite syndrome");
                }
                syndrome = a;
            }
        }
        if (!syndrome) {
            throw std::runtime_error("error annihilated the encoded state");
        }
        uint32_t s = *syndrome;
        ComplexMatrix residual(2, 2);
        for (uint64_t x = 0; x < 2; x++) {
            for (uint64_t y = 0; y < 2; y++) {
                residual(y, x) = out[x][y * msb | s];
            }
        }
        residual = snap(residual);
        if (!is_unitary(residual, 1e-9)) {
            throw std::runtime_error("residual message operator is not unitary");
        }
        ComplexMatrix correction = residual.adjoint();
        auto [it, inserted] = table.corrections.emplace(s, correction);
        if (!inserted && !equal_up_to_phase(it->second, correction, 1e-9)) {
            throw std::runtime_error("syndrome collision with inequivalent residuals");
        }
        if (is_identity_up_to_phase(err.unitary)) {
            saw_identity = true;
        }
    }
    if (!saw_identity) {
        throw std::invalid_argument("error list must include the identity");
    }
    auto zero = table.corrections.find(0);
    if (zero == table.corrections.end() || !is_identity_up_to_phase(zero->second)) {
        throw std::runtime_error("trivial syndrome does not map to the identity");
    }
    zero->second = pauli_i();
    return table;
}

RecoveryTable recovery_table_of(const Circuit &recovery) {
    int n = recovery.n_qubits();
    uint32_t strings = uint32_t{1} << (n - 1);
    std::vector<ComplexMatrix> acc(strings, pauli_i());
    for (const auto &g : recovery.gates()) {
        if (g.target != 0) {
            throw std::invalid_argument("recovery gate does not target the message qubit");
        }
        uint32_t mask = 0, want = 0;
        for (const auto &c : g.controls) {
            if (c.qubit == 0) {
                throw std::invalid_argument("recovery gate controlled on the message qubit");
            }
            uint32_t bit = uint32_t{1} << (n - 1 - c.qubit);
            mask |= bit;
            if (c.polarity) {
                want |= bit;
            }
        }
        for (uint32_t s = 0; s < strings; s++) {
            if ((s & mask) == want) {
                acc[s] = g.unitary * acc[s];
            }
        }
    }
    RecoveryTable table{n, {}};
    for (uint32_t s = 0; s < strings; s++) {
        if (s == 0 || !is_identity_up_to_phase(acc[s])) {
            table.corrections.emplace(s, acc[s]);
        }
    }
    return table;
}

CodeSpec repetition_code(int t) {
    if (t < 1 || t > 4) {
        throw std::invalid_argument("repetition code order t must be in [1, 4]");
    }
    int n = 2 * t + 1;
    Circuit enc(n);
    for (int k = 1; k < n; k++) {
        enc.cnot(0, k);
    }
    Circuit rec(n);
    uint32_t patterns = uint32_t{1} << (n - 1);
    for (uint32_t s = 0; s < patterns; s++) {
        if (std::popcount(s) >= t + 1) {
            rec.append(Gate::x(0, syndrome_controls(n, s)));
        }
    }
    CodeSpec code{n, 0, enc, inverse(enc), rec, false, ChannelFamily::bitflip, "rep" + std::to_string(n)};
    code.validate();
    return code;
}

CodeSpec perfect5_code() {
    constexpr int n = 5;
    std::vector<PauliString> gens = {{"XZZXI"}, {"IXZZX"}, {"XIXZZ"}, {"ZXIXZ"}};

    // Row-reduce so that generator i carries X or Y on ancilla qubit i+1 and
    // only I or Z on the other ancillas.
    auto has_x = [](char c) { return c == 'X' || c == 'Y'; };
    for (int i = 0; i < 4; i++) {
        size_t col = static_cast<size_t>(i + 1);
        auto piv = std::find_if(gens.begin() + i, gens.end(), [&](const PauliString &g) { return has_x(g.ops[col]); });
        if (piv == gens.end()) {
            throw std::runtime_error("stabilizer has no standard form on the chosen ancillas");
        }
        std::iter_swap(gens.begin() + i, piv);
        for (int k = 0; k < 4; k++) {
            if (k != i && has_x(gens[static_cast<size_t>(k)].ops[col])) {
                gens[static_cast<size_t>(k)] = gens[static_cast<size_t>(k)] * gens[static_cast<size_t>(i)];
            }
        }
    }

    Circuit enc(n);
    // State preparation first: an ancilla flipped before encoding then maps to a
    // single-qubit Z on that ancilla.
    for (int i = 1; i <= 4; i++) {
        const auto &g = gens[static_cast<size_t>(i - 1)];
        if (g.phase % 2 != 0) {
            throw std::runtime_error("standard-form generator is not Hermitian");
        }
        double sign = g.phase == 0 ? 1.0 : -1.0;
        Complex c = g.ops[static_cast<size_t>(i)] == 'X' ? Complex(sign) : Complex(0, sign);
        enc.append(Gate{i, hadamard(), {}});
        if (c != Complex(1)) {
            enc.append(Gate{i, ComplexMatrix::from_2x2(1, 0, 0, c), {}});
        }
    }
    for (int i = 1; i <= 4; i++) {
        const auto &g = gens[static_cast<size_t>(i - 1)];
        for (int j = 0; j < i; j++) {
            char f = g.ops[static_cast<size_t>(j)];
            if (f != 'I') {
                enc.append(Gate{j, pauli_matrix(f), {{i, true}}});
            }
        }
    }

    std::vector<LocalError> errors = {{0, pauli_i()}};
    for (int qb = 0; qb < n; qb++) {
        for (const ComplexMatrix *m : {&pauli_x(), &pauli_y(), &pauli_z()}) {
            errors.push_back({qb, *m});
        }
    }
    RecoveryTable table = derive_recovery(enc, errors);
    if (table.corrections.size() != 16) {
        throw std::runtime_error("single-qubit Paulis do not yield 16 distinct syndromes");
    }
    CodeSpec code{n, 0, enc, inverse(enc), table.to_circuit(), false, ChannelFamily::depolarizing, "perfect5"};
    code.validate();
    return code;
}

CodeSpec augment(const CodeSpec &code) {
    if (code.augmented) {
        throw std::invalid_argument("code '" + code.label + "' is already augmented");
    }
    CodeSpec out = code;
    out.encoder = inverse(code.recovery);
    out.encoder.append(code.encoder);
    out.augmented = true;
    out.label = code.label == "concat3-unaug" ? "concat3-top" : code.label + "+aug";
    out.validate();
    return out;
}

CodeSpec concatenated3(ConcatVariant variant) {
    constexpr int n = 9;
    const int blocks[] = {0, 3, 6};
    Circuit outer_enc(n);
    outer_enc.cnot(0, 3).cnot(0, 6);
    Circuit outer_rec(n);
    outer_rec.append(toffoli(3, 6, 0));
    Circuit inner_enc(n), inner_rec(n);
    for (int b : blocks) {
        inner_enc.cnot(b, b + 1).cnot(b, b + 2);
        inner_rec.append(toffoli(b + 1, b + 2, b));
    }

    Circuit enc(n);
    if (variant != ConcatVariant::unaugmented) {
        enc.append(inverse(outer_rec));
    }
    enc.append(outer_enc);
    if (variant == ConcatVariant::full) {
        enc.append(inverse(inner_rec));
    }
    enc.append(inner_enc);

    Circuit dec = inverse(inner_enc);
    dec.append(inner_rec);
    dec.append(inverse(outer_enc));

    static const char *labels[] = {"concat3-unaug", "concat3-top", "concat3-full"};
    CodeSpec code{n,
                  0,
                  enc,
                  dec,
                  outer_rec,
                  variant != ConcatVariant::unaugmented,
                  ChannelFamily::bitflip,
                  labels[static_cast<int>(variant)]};
    code.validate();
    return code;
}

CodeSpec code_from_label(std::string_view label) {
    if (label == "concat3-unaug") return concatenated3(ConcatVariant::unaugmented);
    if (label == "concat3-top") return concatenated3(ConcatVariant::top_level);
    if (label == "concat3-full") return concatenated3(ConcatVariant::full);

    std::string_view base = label;
    bool aug = false;
    if (base.ends_with("+aug")) {
        base.remove_suffix(4);
        aug = true;
    }
    CodeSpec code;
    if (base == "rep3") {
        code = repetition_code(1);
    } else if (base == "rep5") {
        code = repetition_code(2);
    } else if (base == "rep7") {
        code = repetition_code(3);
    } else if (base == "rep9") {
        code = repetition_code(4);
    } else if (base == "perfect5") {
        code = perfect5_code();
    } else {
        throw std::invalid_argument("unknown code label '" + std::string(label) + "'");
    }
    return aug ? augment(code) : code;
}

std::vector<std::string> standard_labels() {
    return {"rep3",          "rep3+aug",    "rep5",        "rep5+aug",     "rep7",
            "rep7+aug",      "rep9",        "rep9+aug",    "perfect5",     "perfect5+aug",
            "concat3-unaug", "concat3-top", "concat3-full"};
}

CodeSpec with_family(CodeSpec code, ChannelFamily family) {
    code.family = family;
    return code;
}

}  // namespace mixqec
