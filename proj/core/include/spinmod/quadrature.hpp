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

#ifndef SPINMOD_QUADRATURE_HPP
#define SPINMOD_QUADRATURE_HPP

#include <vector>

namespace spinmod {

// Gauss-Hermite nodes and weights for the standard normal weight
// exp(-x^2/2)/sqrt(2pi) (probabilists' convention), via the Golub-Welsch
// eigenvalue method. Weights are normalized to sum to exactly 1. For a
// Gaussian variable of standard deviation sigma, sample at sigma * node.
// Exact for polynomials to degree 2n-1; resolves exp(i w x) to |w| ~ sqrt(2n).
void gauss_hermite_nodes(int n, std::vector<double> &nodes, std::vector<double> &weights);

} // namespace spinmod

#endif
