#pragma once

// Built-in test functions with hand-coded closed-form first and second
// derivatives. Everything that needs f', f'' (error curves, manufactured
// right-hand sides) goes through this registry.

#include <functional>
#include <string>
#include <vector>

namespace hermite {

using Sampler = std::function<double(double)>;

struct TestFunction {
  std::string id;
  std::string formula;
  Sampler value;
  Sampler d1;  // may be empty
  Sampler d2;  // may be empty

  /// f, f' or f'' for m = 0, 1, 2. Throws InputError if that sampler is missing.
  const Sampler& derivative(int m) const;
};

namespace functions {

/// exp(-x^2/2) / (x^2 + a); a = 1 has poles at +-i, a = 2 is a collocation example.
TestFunction gauss_over_quadratic(double a);

/// exp(-x^2) cos(5x).
TestFunction wave_packet();

/// exp(-x^2) ln(x^2 + 1).
TestFunction gauss_log();

/// (exp(-(x-1)^2) + exp(-(x+1)^2)) / (4x^2 + 1).
TestFunction twin_gauss();

/// psi_k itself, derivatives through the ladder.
TestFunction hermite_function(int k);

/// Registry ids: "pole", "gauss-rational2", "wavepacket", "gauss-log",
/// "twin-gauss", and "psi<k>" (e.g. "psi3"). Throws InputError otherwise.
TestFunction by_id(const std::string& id);

std::vector<std::string> builtin_ids();

}  // namespace functions

}  // namespace hermite
