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

#ifndef MIXQEC_BIPOLY_HPP
#define MIXQEC_BIPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace mixqec {

/// Exponent pair of a monomial p^p_pow q^q_pow.
struct Monomial {
    int p_pow = 0;
    int q_pow = 0;
    bool operator==(const Monomial &) const = default;
};

/// Graded lexicographic order with p before q: total degree first, then
/// higher powers of p first.
struct GradedLex {
    bool operator()(const Monomial &a, const Monomial &b) const {
        int da = a.p_pow + a.q_pow;
        int db = b.p_pow + b.q_pow;
        if (da != db) {
            return da < db;
        }
        return a.p_pow > b.p_pow;
    }
};

/// Sparse polynomial in (p, q) with real coefficients.
///
/// Coefficients with magnitude below `kPruneThreshold` are dropped after
/// every operation, so structurally-zero terms never accumulate.
class BiPoly {
   public:
    static constexpr double kPruneThreshold = 1e-14;
    using Terms = std::map<Monomial, double, GradedLex>;

    BiPoly() = default;
    static BiPoly constant(double c);
    static BiPoly monomial(int p_pow, int q_pow, double coeff = 1.0);
    static BiPoly p() { return monomial(1, 0); }
    static BiPoly q() { return monomial(0, 1); }

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    double coeff(int p_pow, int q_pow) const;
    int degree_p() const;
    int degree_q() const;

    BiPoly operator+(const BiPoly &o) const;
    BiPoly operator-(const BiPoly &o) const;
    BiPoly operator*(const BiPoly &o) const;
    BiPoly operator*(double s) const;
    BiPoly pow(int k) const;
    bool operator==(const BiPoly &o) const { return terms_ == o.terms_; }

    /// Largest coefficient difference over the union of supports.
    double max_abs_diff(const BiPoly &o) const;

    /// Horner evaluation: inner polynomial in q per power of p, then Horner in p.
    double eval(double p, double q) const;

    /// The univariate polynomial c_k(q) with F = sum_k c_k(q) p^k.
    BiPoly coefficient_in_p(int k) const;

    /// Human-readable form, e.g. "1 - 2*q + 0.5*p*q^2".
    std::string to_string() const;

   private:
    void add_term(Monomial m, double c);
    void prune();
    Terms terms_;
};

inline BiPoly operator*(double s, const BiPoly &f) {
    return f * s;
}

/// [{"p_pow": i, "q_pow": j, "coeff": c}, ...] in canonical order.
nlohmann::json to_json(const BiPoly &f);
BiPoly bipoly_from_json(const nlohmann::json &j);

}  // namespace mixqec

#endif
