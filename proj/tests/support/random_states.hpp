// Copyright 2026 The bellkit Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <complex>
#include <random>

#include "bellkit/qstate.hpp"

namespace bellkit::testing {

// Random physical two-qubit states: convex mixtures of Haar-ish random pure
// states, projected onto the eight in-plane expectation values. These are
// positive by construction, independent of the library's own checks.
class RandomStates {
  public:
    explicit RandomStates(unsigned seed) : rng_(seed) {}

    XZState next(int components = 3) {
        std::array<double, 8> acc{};
        std::vector<double> weights;
        double total = 0.0;
        for (int k = 0; k < components; ++k) {
            weights.push_back(exp_(rng_));
            total += weights.back();
        }
        for (int k = 0; k < components; ++k) {
            const auto c = pure_coefficients();
            for (std::size_t i = 0; i < c.size(); ++i) {
                acc[i] += weights[k] / total * c[i];
            }
        }
        return XZState::from_coefficients(acc);
    }

  private:
    using Vec = std::array<std::complex<double>, 4>;

    // Index 2a + b; a is Alice's qubit. op: 0 = identity, 1 = z, 2 = x.
    static Vec apply(const Vec &psi, int op_a, int op_b) {
        Vec out{};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                int ta = a, tb = b;
                double sign = 1.0;
                if (op_a == 1) sign *= a == 0 ? 1.0 : -1.0;
                if (op_a == 2) ta = 1 - a;
                if (op_b == 1) sign *= b == 0 ? 1.0 : -1.0;
                if (op_b == 2) tb = 1 - b;
                out[2 * ta + tb] += sign * psi[2 * a + b];
            }
        }
        return out;
    }

    static double expect(const Vec &psi, int op_a, int op_b) {
        const Vec o = apply(psi, op_a, op_b);
        std::complex<double> s = 0.0;
        for (int i = 0; i < 4; ++i) {
            s += std::conj(psi[i]) * o[i];
        }
        return s.real();
    }

    std::array<double, 8> pure_coefficients() {
        Vec psi;
        double norm = 0.0;
        for (auto &amp : psi) {
            amp = {normal_(rng_), normal_(rng_)};
            norm += std::norm(amp);
        }
        for (auto &amp : psi) {
            amp /= std::sqrt(norm);
        }
        return {expect(psi, 1, 0), expect(psi, 2, 0), expect(psi, 0, 1),
                expect(psi, 0, 2), expect(psi, 1, 1), expect(psi, 1, 2),
                expect(psi, 2, 1), expect(psi, 2, 2)};
    }

    std::mt19937 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::exponential_distribution<double> exp_{1.0};
};

} // namespace bellkit::testing
