#pragma once

// Named pencils with known topology, and a seeded random generator.

#include "qtopo/pencil.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qtopo::fixtures {

/// q0 = x1^2 + 2 x0 x2 - x3^2, q1 = x1 x2 on R^4; X is a bouquet of three circles.
QuadraticPencil bouquet();

/// q0 = x0^2 - x2^2, q1 = x1^2 - x3^2 on R^4; X is four lines.
QuadraticPencil four_lines();

/// q = (x0^2 - x1^2, 2 x0 x1); the real and imaginary parts of z^2.
QuadraticPencil complex_squaring();

/// Two orthogonal copies of the complex squaring pencil on R^4.
QuadraticPencil doubled_squaring();

/// Q0 = I, Q1 = 0 on R^{n+1}.
QuadraticPencil identity(int n);

/// q0 = x1^2, q1 = x2^2 + x3^2 on R^4; X is the single point [1:0:0:0].
QuadraticPencil point_pair();

/// Q0 = Q1 = diag(1, 0); det vanishes identically.
QuadraticPencil rank_one();

/// Lookup by name; nullopt when unknown. The extremal family takes its size
/// from `n`.
std::optional<QuadraticPencil> by_name(const std::string& name, int n = 4);
std::vector<std::string> names();

/// Symmetric Gaussian pencil on R^{n+1}.
QuadraticPencil random_pencil(int n, std::mt19937_64& rng);

}  // namespace qtopo::fixtures
