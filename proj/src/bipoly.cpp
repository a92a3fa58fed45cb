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

#include "mixqec/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mixqec {

BiPoly BiPoly::constant(double c) {
    return monomial(0, 0, c);
}

BiPoly BiPoly::monomial(int p_pow, int q_pow, double coeff) {
    if (p_pow < 0 || q_pow < 0) {
        throw std::invalid_argument("negative exponent");
    }
    BiPoly f;
    f.add_term({p_pow, q_pow}, coeff);
    f.prune();
    return f;
}

void BiPoly::add_term(Monomial m, double c) {
    terms_[m] += c;
}

void BiPoly::prune() {
    std::erase_if(terms_, [](const auto &kv) { return std::abs(kv.second) < kPruneThreshold; });
}

double BiPoly::coeff(int p_pow, int q_pow) const {
    auto it = terms_.find({p_pow, q_pow});
    return it == terms_.end() ? 0.0 : it->second;
}

int BiPoly::degree_p() const {
    int d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.p_pow);
    }
    return d;
}

int BiPoly::degree_q() const {
    int d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.q_pow);
    }
    return d;
}

BiPoly BiPoly::operator+(const BiPoly &o) const {
    BiPoly out = *this;
    for (const auto &[m, c] : o.terms_) {
        out.add_term(m, c);
    }
    out.prune();
    return out;
}

BiPoly BiPoly::operator-(const BiPoly &o) const {
    return *this + o * -1.0;
}

BiPoly BiPoly::operator*(const BiPoly &o) const {
    BiPoly out;
    for (const auto &[ma, ca] : terms_) {
        for (const auto &[mb, cb] : o.terms_) {
            out.add_term({ma.p_pow + mb.p_pow, ma.q_pow + mb.q_pow}, ca * cb);
        }
    }
    out.prune();
    return out;
}

BiPoly BiPoly::operator*(double s) const {
    BiPoly out;
    for (const auto &[m, c] : terms_) {
        out.add_term(m, c * s);
    }
    out.prune();
    return out;
}

BiPoly BiPoly::pow(int k) const {
    if (k < 0) {
        throw std::invalid_argument("negative power");
    }
    BiPoly result = constant(1);
    BiPoly base = *this;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

double BiPoly::max_abs_diff(const BiPoly &o) const {
    double worst = 0;
    for (const auto &[m, c] : terms_) {
        worst = std::max(worst, std::abs(c - o.coeff(m.p_pow, m.q_pow)));
    }
    for (const auto &[m, c] : o.terms_) {
        worst = std::max(worst, std::abs(c - coeff(m.p_pow, m.q_pow)));
    }
    return worst;
}

double BiPoly::eval(double p, double q) const {
    if (terms_.empty()) {
        return 0;
    }
    int dp = degree_p();
    int dq = degree_q();
    std::vector<double> dense(static_cast<size_t>((dp + 1) * (dq + 1)), 0.0);
    for (const auto &[m, c] : terms_) {
        dense[static_cast<size_t>(m.p_pow * (dq + 1) + m.q_pow)] = c;
    }
    double acc = 0;
    for (int i = dp; i >= 0; i--) {
        double inner = 0;
        for (int j = dq; j >= 0; j--) {
            inner = inner * q + dense[static_cast<size_t>(i * (dq + 1) + j)];
        }
        acc = acc * p + inner;
    }
    return acc;
}

BiPoly BiPoly::coefficient_in_p(int k) const {
    if (k < 0) {
        throw std::invalid_argument("coefficient index must be non-negative");
    }
    BiPoly out;
    for (const auto &[m, c] : terms_) {
        if (m.p_pow == k) {
            out.add_term({0, m.q_pow}, c);
        }
    }
    return out;
}

std::string BiPoly::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    out.precision(12);
    bool first = true;
    for (const auto &[m, c] : terms_) {
        double mag = std::abs(c);
        if (first) {
            if (c < 0) {
                out << "-";
            }
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool bare = m.p_pow == 0 && m.q_pow == 0;
        if (bare || mag != 1.0) {
            out << mag;
            if (!bare) {
                out << "*";
            }
        }
        bool wrote = false;
        if (m.p_pow > 0) {
            out << "p";
            if (m.p_pow > 1) {
                out << "^" << m.p_pow;
            }
            wrote = true;
        }
        if (m.q_pow > 0) {
            if (wrote) {
                out << "*";
            }
            out << "q";
            if (m.q_pow > 1) {
                out << "^" << m.q_pow;
            }
        }
    }
    return out.str();
}

nlohmann::json to_json(const BiPoly &f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &[m, c] : f.terms()) {
        arr.push_back({{"p_pow", m.p_pow}, {"q_pow", m.q_pow}, {"coeff", c}});
    }
    return arr;
}

BiPoly bipoly_from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw std::invalid_argument("polynomial JSON must be an array of terms");
    }
    BiPoly f;
    for (const auto &t : j) {
        f = f + BiPoly::monomial(t.at("p_pow").get<int>(), t.at("q_pow").get<int>(), t.at("coeff").get<double>());
    }
    return f;
}

}  // namespace mixqec
