// Copyright 2026 The spinmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinmod/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "spinmod/units.hpp"

namespace spinmod {

namespace {

std::vector<double> zero_crossings(const std::vector<double> &x, const std::vector<double> &y,
                                   double x_min, double x_max) {
    std::vector<double> out;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (x[i] < x_min || x[i] > x_max) {
            continue;
        }
        if ((y[i - 1] < 0 && y[i] >= 0) || (y[i - 1] > 0 && y[i] <= 0)) {
            const double frac = -y[i - 1] / (y[i] - y[i - 1]);
            out.push_back(x[i - 1] + frac * (x[i] - x[i - 1]));
        }
    }
    return out;
}

} // namespace

std::optional<double> frequency_from_zero_crossings(const std::vector<double> &x,
                                                    const std::vector<double> &y, double x_min,
                                                    double x_max) {
    std::vector<double> zs = zero_crossings(x, y, x_min, x_max);
    if (zs.size() < 2) {
        return std::nullopt;
    }
    std::vector<double> gaps(zs.size() - 1);
    for (std::size_t i = 1; i < zs.size(); ++i) {
        gaps[i - 1] = zs[i] - zs[i - 1];
    }
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    const double half_period = gaps[gaps.size() / 2];
    if (half_period <= 0) {
        return std::nullopt;
    }
    return 1.0 / (2.0 * half_period);
}

std::optional<double> first_zero_crossing(const std::vector<double> &x,
                                          const std::vector<double> &y, double x_min) {
    std::vector<double> zs = zero_crossings(x, y, x_min, x.back());
    if (zs.empty()) {
        return std::nullopt;
    }
    return zs.front();
}

std::optional<double> demodulated_envelope_rate(const std::vector<double> &x,
                                                const std::vector<double> &y, double w,
                                                double x_min, double x_max) {
    const std::size_t n = y.size();
    if (n < 8 || w <= 0) {
        return std::nullopt;
    }
    const double dx = x[1] - x[0];
    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = y[i] * std::exp(std::complex<double>(0.0, w * x[i]));
    }
    // one-period moving average kills the 2w term and the DC-shifted baseline
    const auto win = static_cast<std::size_t>(std::max(1.0, std::round(units::two_pi / w / dx)));
    std::vector<double> t_fit;
    std::vector<double> log_env;
    for (std::size_t i = 0; i + win <= n; ++i) {
        const double xc = x[i + win / 2];
        if (xc < x_min || xc > x_max) {
            continue;
        }
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = i; k < i + win; ++k) {
            acc += z[k];
        }
        const double mag = std::abs(acc) / static_cast<double>(win);
        if (mag <= 0) {
            continue;
        }
        t_fit.push_back(xc);
        log_env.push_back(std::log(mag));
    }
    if (t_fit.size() < 4) {
        return std::nullopt;
    }
    // least-squares line through (t, log_env)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(t_fit.size());
    for (std::size_t i = 0; i < t_fit.size(); ++i) {
        sx += t_fit[i];
        sy += log_env[i];
        sxx += t_fit[i] * t_fit[i];
        sxy += t_fit[i] * log_env[i];
    }
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) {
        return std::nullopt;
    }
    return -(m * sxy - sx * sy) / denom;
}

std::vector<Peak> find_peaks(const std::vector<double> &x, const std::vector<double> &y,
                             double min_height) {
    std::vector<Peak> peaks;
    const std::size_t n = y.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (y[i] >= y[i - 1] && y[i] >= y[i + 1] && y[i] > min_height &&
            (y[i] > y[i - 1] || y[i] > y[i + 1])) {
            peaks.push_back({x[i], y[i]});
        }
    }
    return peaks;
}

std::optional<double> envelope_one_over_e_time(const std::vector<double> &x,
                                               const std::vector<double> &y_abs) {
    if (y_abs.empty() || y_abs[0] <= 0) {
        return std::nullopt;
    }
    const double target = y_abs[0] / std::exp(1.0);
    std::vector<Peak> env = find_peaks(x, y_abs);
    env.insert(env.begin(), {x[0], y_abs[0]});
    for (std::size_t i = 1; i < env.size(); ++i) {
        if (env[i].y < target && env[i - 1].y >= target) {
            const double l0 = std::log(env[i - 1].y);
            const double l1 = std::log(env[i].y);
            const double frac = (std::log(target) - l0) / (l1 - l0);
            return env[i - 1].x + frac * (env[i].x - env[i - 1].x);
        }
    }
    return std::nullopt;
}

double parabolic_peak_position(const std::vector<double> &x, const std::vector<double> &y,
                               std::size_t i) {
    if (i == 0 || i + 1 >= y.size()) {
        return x[i];
    }
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (std::abs(denom) < 1e-300) {
        return x[i];
    }
    const double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
    return x[i] + shift * (x[i + 1] - x[i]);
}

std::optional<double> fwhm_about_peak(const std::vector<double> &x, const std::vector<double> &y,
                                      std::size_t i) {
    const double half = 0.5 * y[i];
    std::size_t lo = i;
    while (lo > 0 && y[lo] > half) {
        --lo;
    }
    std::size_t hi = i;
    while (hi + 1 < y.size() && y[hi] > half) {
        ++hi;
    }
    if (y[lo] > half || y[hi] > half) {
        return std::nullopt; // ran off the grid before crossing half-height
    }
    const double xl = x[lo] + (x[lo + 1] - x[lo]) * (half - y[lo]) / (y[lo + 1] - y[lo]);
    const double xr = x[hi - 1] + (x[hi] - x[hi - 1]) * (half - y[hi - 1]) / (y[hi] - y[hi - 1]);
    return xr - xl;
}

double weighted_mean(const std::vector<double> &x, const std::vector<double> &y) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += x[i] * y[i];
        den += y[i];
    }
    return den != 0 ? num / den : 0.0;
}

} // namespace spinmod
