// Copyright 2026 The QRAC Authors
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

#pragma once

#include <cstddef>

namespace qrac {

/// Largest QRAC size n (so 2^(n-1) amplitudes) handled by dense routines
/// unless a caller passes an explicit override.
inline constexpr int kDefaultDenseLimit = 10;

/// Largest matrix dimension accepted by the eigensolver and operator norm.
inline constexpr std::size_t kMaxEigenDim = 512;

namespace tol {

/// Coefficients with magnitude below this are dropped from Pauli sums.
inline constexpr double kPrune = 1e-12;
/// Exactness expected from constructions (state norms, overlaps, sums of c_j^2).
inline constexpr double kConstruction = 1e-12;
/// Generic verification tolerance for dense comparisons.
inline constexpr double kVerify = 1e-9;
/// Projector identities (completeness, PQP = mu P).
inline constexpr double kProjector = 1e-10;
/// Operators tagged Hermitian must satisfy max|A - A^dagger| below this.
inline constexpr double kHermitian = 1e-12;
/// Hermiticity slack accepted on eigensolver input.
inline constexpr double kEigenInput = 1e-10;
/// Imaginary part allowed in an expectation value of a Hermitian operator.
inline constexpr double kImagExpectation = 1e-10;
/// Off-diagonal Frobenius mass (squared) at which Jacobi sweeps stop.
inline constexpr double kJacobiOffDiagonal = 1e-22;
/// Circuit unitarity ||U^dagger U - I||_max.
inline constexpr double kUnitarity = 1e-10;

}  // namespace tol

inline constexpr int kMaxJacobiSweeps = 100;

}  // namespace qrac
