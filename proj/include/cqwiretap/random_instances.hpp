// Copyright 2026 The cqwiretap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random instance generators shared by the tests, the acceptance suite and
// the command-line runner. Every generator draws from an explicit Rng so a
// seed reproduces the instance exactly.

#pragma once

#include <cstddef>
#include <vector>

#include "cqwiretap/bri.hpp"
#include "cqwiretap/cqchan.hpp"
#include "cqwiretap/qop.hpp"
#include "cqwiretap/rng.hpp"

namespace cqw {

/// Vector of i.i.d. standard complex Gaussians.
[[nodiscard]] ComplexVector random_complex_vector(Rng &rng, Index dim);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
[[nodiscard]] Matrix random_unitary(Rng &rng, Index dim);

/// Isometry with orthonormal columns, rows >= cols.
[[nodiscard]] Matrix random_isometry(Rng &rng, Index rows, Index cols);

/// Density operator G G* / tr(G G*) with G a dim x rank Ginibre matrix.
/// rank = 0 means full rank.
[[nodiscard]] DensityOperator random_density(Rng &rng, Index dim, Index rank = 0);

/// Probability vector drawn uniformly from the simplex.
[[nodiscard]] std::vector<double> random_distribution(Rng &rng, std::size_t k);

/// cq channel with independent random outputs of random rank.
[[nodiscard]] CqChannel random_channel(Rng &rng, std::size_t inputs, Index dim);

/// Channel with diagonal (commuting) outputs.
[[nodiscard]] CqChannel random_classical_outputs(Rng &rng, std::size_t inputs,
                                                 Index dim);

/// Dense stochastic matrix with uniform random rows.
[[nodiscard]] ClassicalChannel random_stochastic(Rng &rng, std::size_t rows,
                                                 std::size_t cols);

/// Biregular function built from cyclic shifts of a random arrangement:
/// f(s, x) = pi((tau(x) + s) mod |X|) / d_s), with the shift set repeated
/// `repeats` times and the seeds shuffled. Requires d_s to divide |X|.
[[nodiscard]] BriFunction random_bri(Rng &rng, std::size_t num_inputs,
                                     std::size_t d_s, std::size_t repeats = 1);

/// Uniformly random permutation of 0..n-1.
[[nodiscard]] std::vector<std::size_t> random_permutation(Rng &rng,
                                                          std::size_t n);

} // namespace cqw
