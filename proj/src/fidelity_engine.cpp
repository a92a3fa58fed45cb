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

#include "mixqec/fidelity_engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mixqec {

namespace {

constexpr uint64_t kMaxGenericPatterns = uint64_t{1} << 22;

int family_size(ChannelFamily f) {
    return f == ChannelFamily::bitflip ? 2 : 4;
}

const ComplexMatrix &family_pauli(ChannelFamily f, int digit) {
    if (f == ChannelFamily::bitflip) {
        return digit == 0 ? pauli_i() : pauli_x();
    }
    static const ComplexMatrix *all[] = {&pauli_i(), &pauli_x(), &pauli_y(), &pauli_z()};
    return *all[digit];
}

// Runs fn(chunk) for chunk in [0, chunks) on up to `workers` threads.
template <typename Fn>
void run_chunks(uint32_t chunks, int workers, Fn &&fn) {
    int threads = std::clamp(workers, 1, static_cast<int>(chunks));
    if (threads == 1) {
        for (uint32_t c = 0; c < chunks; c++) {
            fn(c);
        }
        return;
    }
    std::atomic<uint32_t> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; t++) {
        pool.emplace_back([&] {
            for (uint32_t c = next++; c < chunks; c = next++) {
                fn(c);
            }
        });
    }
}

struct PermutationGate {
    uint32_t mask;
    uint32_t want;
    uint32_t flip;
};

std::vector<PermutationGate> compile_permutation(const Circuit &c) {
    int n = c.n_qubits();
    std::vector<PermutationGate> out;
    for (const auto &g : c.gates()) {
        PermutationGate pg{0, 0, uint32_t{1} << (n - 1 - g.target)};
        for (const auto &ctl : g.controls) {
            uint32_t b = uint32_t{1} << (n - 1 - ctl.qubit);
            pg.mask |= b;
            if (ctl.polarity) {
                pg.want |= b;
            }
        }
        out.push_back(pg);
    }
    return out;
}

inline uint32_t run_permutation(const std::vector<PermutationGate> &gates, uint32_t state) {
    for (const auto &g : gates) {
        if ((state & g.mask) == g.want) {
            state ^= g.flip;
        }
    }
    return state;
}

WeightHistogram permutation_chunk(const CodeSpec &code, const std::vector<PermutationGate> &enc,
                                  const std::vector<PermutationGate> &post, uint32_t a) {
    int n = code.n_qubits;
    uint32_t msb = uint32_t{1} << (n - 1);
    WeightHistogram w(code.ancilla_count(), n);
    int j = std::popcount(a);
    uint32_t pre0 = run_permutation(enc, a);
    uint32_t pre1 = run_permutation(enc, msb | a);
    uint32_t errors = uint32_t{1} << n;
    for (uint32_t e = 0; e < errors; e++) {
        uint32_t out0 = run_permutation(post, pre0 ^ e);
        uint32_t out1 = run_permutation(post, pre1 ^ e);
        // <0,s|psi_0> contributes when the message reads 0, <1,s|psi_1> when it reads 1.
        int t0 = (out0 & msb) == 0 ? 1 : 0;
        int t1 = (out1 & msb) != 0 ? 1 : 0;
        double weight;
        if ((out0 & (msb - 1)) == (out1 & (msb - 1))) {
            weight = (t0 + t1) * (t0 + t1);
        } else {
            weight = t0 + t1;
        }
        w.at(j, std::popcount(e)) += weight / 4;
    }
    return w;
}

using SparseState = std::vector<std::pair<uint64_t, Complex>>;

SparseState sparse_of(const StateVector &v) {
    SparseState out;
    for (uint64_t x = 0; x < v.dim(); x++) {
        if (v[x] != Complex(0)) {
            out.emplace_back(x, v[x]);
        }
    }
    return out;
}

// Applies a single-qubit Pauli. Paulis have one nonzero per column, so the
// support size is preserved and no entries collide.
void apply_pauli(SparseState &s, int n, int qubit, const ComplexMatrix &m) {
    uint64_t bit = uint64_t{1} << (n - 1 - qubit);
    for (auto &[x, c] : s) {
        int b = (x & bit) ? 1 : 0;
        int row = m(0, b) != Complex(0) ? 0 : 1;
        c *= m(row, b);
        x = row ? (x | bit) : (x & ~bit);
    }
}

// The decoder and recovery form one fixed unitary M, so each pattern only needs
// the columns of M on the support of the errored pre-states.
// `post_t` holds M transposed so that each column is contiguous.
WeightHistogram generic_chunk(const CodeSpec &code, const std::vector<LocalOp> &enc, const ComplexMatrix &post_t,
                              uint32_t a) {
    int n = code.n_qubits;
    uint64_t msb = uint64_t{1} << (n - 1);
    int base = family_size(code.family);
    WeightHistogram w(code.ancilla_count(), n);
    int j = std::popcount(a);

    StateVector v0 = StateVector::basis(n, a);
    StateVector v1 = StateVector::basis(n, msb | a);
    for (const auto &op : enc) {
        v0.apply(op);
        v1.apply(op);
    }
    SparseState pre0 = sparse_of(v0);
    SparseState pre1 = sparse_of(v1);

    uint64_t errors = 1;
    for (int k = 0; k < n; k++) {
        errors *= static_cast<uint64_t>(base);
    }
    std::vector<Complex> acc(msb);
    for (uint64_t e = 0; e < errors; e++) {
        SparseState s0 = pre0;
        SparseState s1 = pre1;
        uint64_t rest = e;
        int k_count = 0;
        for (int qb = n - 1; qb >= 0; qb--) {
            int d = static_cast<int>(rest % static_cast<uint64_t>(base));
            rest /= static_cast<uint64_t>(base);
            if (d != 0) {
                k_count++;
                const ComplexMatrix &pauli = family_pauli(code.family, d);
                apply_pauli(s0, n, qb, pauli);
                apply_pauli(s1, n, qb, pauli);
            }
        }
        // acc[s] = <0,s|M|s0> + <1,s|M|s1>
        std::fill(acc.begin(), acc.end(), Complex(0));
        for (const auto &[x, c] : s0) {
            const Complex *col = post_t.row(x);
            for (uint64_t r = 0; r < msb; r++) {
                acc[r] += col[r] * c;
            }
        }
        for (const auto &[x, c] : s1) {
            const Complex *col = post_t.row(x) + msb;
            for (uint64_t r = 0; r < msb; r++) {
                acc[r] += col[r] * c;
            }
        }
        double weight = 0;
        for (const auto &z : acc) {
            weight += std::norm(z);
        }
        w.at(j, k_count) += weight / 4;
    }
    return w;
}

}  // namespace

WeightHistogram::WeightHistogram(int ancillas, int qubits)
    : ancillas_(ancillas), qubits_(qubits), cells_(static_cast<size_t>((ancillas + 1) * (qubits + 1)), 0.0) {
}

void WeightHistogram::merge(const WeightHistogram &other) {
    if (other.ancillas_ != ancillas_ || other.qubits_ != qubits_) {
        throw std::invalid_argument("histogram shapes differ");
    }
    for (size_t k = 0; k < cells_.size(); k++) {
        cells_[k] += other.cells_[k];
    }
}

uint64_t pattern_count(const CodeSpec &code) {
    uint64_t count = uint64_t{1} << code.ancilla_count();
    for (int k = 0; k < code.n_qubits; k++) {
        count *= static_cast<uint64_t>(family_size(code.family));
    }
    return count;
}

bool permutation_path_applicable(const CodeSpec &code) {
    return code.family == ChannelFamily::bitflip && code.encoder.is_permutation() &&
           code.decoder.is_permutation() && code.recovery.is_permutation();
}

WeightHistogram weight_histogram(const CodeSpec &code, const EngineOptions &options) {
    code.validate();
    int n = code.n_qubits;
    bool permutation = false;
    switch (options.path) {
        case PropagationPath::automatic:
            permutation = permutation_path_applicable(code);
            break;
        case PropagationPath::permutation:
            if (!permutation_path_applicable(code)) {
                throw std::invalid_argument("permutation path requires controlled-X circuits and bit-flip errors");
            }
            permutation = true;
            break;
        case PropagationPath::generic:
            break;
    }
    if (!permutation && pattern_count(code) > kMaxGenericPatterns) {
        throw std::invalid_argument("pattern space of '" + code.label + "' is too large for generic propagation");
    }

    uint32_t chunks = uint32_t{1} << code.ancilla_count();
    std::vector<WeightHistogram> partial(chunks, WeightHistogram(code.ancilla_count(), n));
    Circuit post = code.decoder;
    post.append(code.recovery);

    if (permutation) {
        auto enc = compile_permutation(code.encoder);
        auto post_gates = compile_permutation(post);
        run_chunks(chunks, options.workers, [&](uint32_t a) { partial[a] = permutation_chunk(code, enc, post_gates, a); });
    } else {
        auto enc = code.encoder.compile();
        ComplexMatrix m = post.matrix();
        ComplexMatrix post_t(m.cols(), m.rows());
        for (size_t r = 0; r < m.rows(); r++) {
            for (size_t c = 0; c < m.cols(); c++) {
                post_t(c, r) = m(r, c);
            }
        }
        run_chunks(chunks, options.workers,
                   [&](uint32_t a) { partial[a] = generic_chunk(code, enc, post_t, a); });
    }

    WeightHistogram total(code.ancilla_count(), n);
    for (const auto &h : partial) {
        total.merge(h);
    }
    return total;
}

BiPoly polynomial_from_histogram(const WeightHistogram &w, ChannelFamily family) {
    int na = w.ancillas();
    int n = w.qubits();
    BiPoly flipped = BiPoly::q() * 0.5;
    BiPoly clean = BiPoly::constant(1) - flipped;
    BiPoly hit, miss;
    if (family == ChannelFamily::bitflip) {
        hit = BiPoly::p();
        miss = BiPoly::constant(1) - BiPoly::p();
    } else {
        hit = BiPoly::p() * 0.25;
        miss = BiPoly::constant(1) - BiPoly::p() * 0.75;
    }
    std::vector<BiPoly> init(static_cast<size_t>(na + 1)), main(static_cast<size_t>(n + 1));
    for (int j = 0; j <= na; j++) {
        init[static_cast<size_t>(j)] = flipped.pow(j) * clean.pow(na - j);
    }
    for (int k = 0; k <= n; k++) {
        main[static_cast<size_t>(k)] = hit.pow(k) * miss.pow(n - k);
    }
    BiPoly f;
    for (int j = 0; j <= na; j++) {
        for (int k = 0; k <= n; k++) {
            double c = w.at(j, k);
            if (c != 0) {
                f = f + init[static_cast<size_t>(j)] * main[static_cast<size_t>(k)] * c;
            }
        }
    }
    return f;
}

BiPoly fidelity_polynomial(const CodeSpec &code, const EngineOptions &options) {
    return polynomial_from_histogram(weight_histogram(code, options), code.family);
}

double oracle_fidelity(const CodeSpec &code, double p, double q) {
    if (!(p >= 0 && p <= 1 && q >= 0 && q <= 1)) {
        throw std::invalid_argument("p and q must lie in [0, 1]");
    }
    code.validate();
    int n = code.n_qubits;
    int total = n + 1;  // reference qubit appended last
    size_t dim = size_t{1} << total;

    ComplexMatrix ancilla = rho_q(q).matrix();
    for (int k = 1; k < code.ancilla_count(); k++) {
        ancilla = tensor(ancilla, rho_q(q).matrix());
    }
    size_t da = ancilla.rows();
    ComplexMatrix rho(dim, dim);
    auto index = [&](size_t x, size_t a) { return (x << n) | (a << 1) | x; };
    for (size_t x = 0; x < 2; x++) {
        for (size_t y = 0; y < 2; y++) {
            for (size_t a = 0; a < da; a++) {
                for (size_t b = 0; b < da; b++) {
                    Complex v = ancilla(a, b);
                    if (v != Complex{}) {
                        rho(index(x, a), index(y, b)) = v * 0.5;
                    }
                }
            }
        }
    }

    for (const auto &op : code.encoder.widened(total).compile()) {
        op.conjugate(rho);
    }
    KrausChannel channel =
        code.family == ChannelFamily::bitflip ? main_bitflip_channel(p) : depolarizing_channel(p);
    for (int qb = 0; qb < n; qb++) {
        apply_local_channel(channel, total, qb, rho);
    }
    for (const Circuit *c : {&code.decoder, &code.recovery}) {
        for (const auto &op : c->widened(total).compile()) {
            op.conjugate(rho);
        }
    }

    const int keep[] = {0, n};
    DensityMatrix reduced = partial_trace(DensityMatrix::trusted(std::move(rho)), keep);
    // <Omega| rho |Omega> with |Omega> = (|00> + |11>)/sqrt(2).
    Complex overlap = (reduced(0, 0) + reduced(0, 3) + reduced(3, 0) + reduced(3, 3)) * 0.5;
    return overlap.real();
}

double unencoded_baseline(ChannelFamily family, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    return family == ChannelFamily::bitflip ? 1 - p : 1 - 0.75 * p;
}

}  // namespace mixqec
