#include "hermite/functions.hpp"

#include <cmath>
#include <string>

#include "hermite/basis.hpp"
#include "hermite/errors.hpp"
#include "hermite/io.hpp"

namespace hermite {

const Sampler& TestFunction::derivative(int m) const {
  const Sampler* s = nullptr;
  switch (m) {
    case 0: s = &value; break;
    case 1: s = &d1; break;
    case 2: s = &d2; break;
    default:
      throw InputError("TestFunction " + id + ": derivative order " + std::to_string(m) +
                       " not supported");
  }
  if (!*s) {
    throw InputError("TestFunction " + id + ": no sampler for derivative order " +
                     std::to_string(m));
  }
  return *s;
}

namespace functions {

TestFunction gauss_over_quadratic(double a) {
  TestFunction f;
  f.id = a == 1.0 ? "pole" : a == 2.0 ? "gauss-rational2" : "gauss-rational";
  f.formula = "exp(-x^2/2)/(x^2+" + io::fmt17(a) + ")";
  f.value = [a](double x) { return std::exp(-0.5 * x * x) / (x * x + a); };
  f.d1 = [a](double x) {
    const double g = std::exp(-0.5 * x * x);
    const double r = 1.0 / (x * x + a);
    return g * (-x * r - 2.0 * x * r * r);
  };
  f.d2 = [a](double x) {
    const double g = std::exp(-0.5 * x * x);
    const double r = 1.0 / (x * x + a);
    const double x2 = x * x;
    return g * ((x2 - 1.0) * r + 4.0 * x2 * r * r + (6.0 * x2 - 2.0 * a) * r * r * r);
  };
  return f;
}

TestFunction wave_packet() {
  TestFunction f;
  f.id = "wavepacket";
  f.formula = "exp(-x^2)cos(5x)";
  f.value = [](double x) { return std::exp(-x * x) * std::cos(5.0 * x); };
  f.d1 = [](double x) {
    return std::exp(-x * x) * (-2.0 * x * std::cos(5.0 * x) - 5.0 * std::sin(5.0 * x));
  };
  f.d2 = [](double x) {
    return std::exp(-x * x) *
           ((4.0 * x * x - 27.0) * std::cos(5.0 * x) + 20.0 * x * std::sin(5.0 * x));
  };
  return f;
}

TestFunction gauss_log() {
  TestFunction f;
  f.id = "gauss-log";
  f.formula = "exp(-x^2)ln(x^2+1)";
  f.value = [](double x) { return std::exp(-x * x) * std::log1p(x * x); };
  f.d1 = [](double x) {
    const double q = x * x + 1.0;
    return std::exp(-x * x) * (-2.0 * x * std::log1p(x * x) + 2.0 * x / q);
  };
  f.d2 = [](double x) {
    const double x2 = x * x;
    const double q = x2 + 1.0;
    const double l = std::log1p(x2);
    return std::exp(-x2) *
           ((4.0 * x2 - 2.0) * l - 4.0 * x * (2.0 * x / q) + (2.0 - 2.0 * x2) / (q * q));
  };
  return f;
}

TestFunction twin_gauss() {
  TestFunction f;
  f.id = "twin-gauss";
  f.formula = "(exp(-(x-1)^2)+exp(-(x+1)^2))/(4x^2+1)";
  f.value = [](double x) {
    return (std::exp(-(x - 1) * (x - 1)) + std::exp(-(x + 1) * (x + 1))) / (4.0 * x * x + 1.0);
  };
  f.d1 = [](double x) {
    const double e1 = std::exp(-(x - 1) * (x - 1));
    const double e2 = std::exp(-(x + 1) * (x + 1));
    const double r = 1.0 / (4.0 * x * x + 1.0);
    const double p = e1 + e2;
    const double dp = -2.0 * (x - 1) * e1 - 2.0 * (x + 1) * e2;
    return dp * r - 8.0 * x * r * r * p;
  };
  f.d2 = [](double x) {
    const double e1 = std::exp(-(x - 1) * (x - 1));
    const double e2 = std::exp(-(x + 1) * (x + 1));
    const double r = 1.0 / (4.0 * x * x + 1.0);
    const double p = e1 + e2;
    const double dp = -2.0 * (x - 1) * e1 - 2.0 * (x + 1) * e2;
    const double ddp = (4.0 * (x - 1) * (x - 1) - 2.0) * e1 + (4.0 * (x + 1) * (x + 1) - 2.0) * e2;
    const double dr = -8.0 * x * r * r;
    const double ddr = (96.0 * x * x - 8.0) * r * r * r;
    return ddp * r + 2.0 * dp * dr + p * ddr;
  };
  return f;
}

TestFunction hermite_function(int k) {
  if (k < 0 || k > kMaxDegree) throw InputError("hermite_function: index out of range");
  TestFunction f;
  f.id = "psi" + std::to_string(k);
  f.formula = "psi_" + std::to_string(k) + "(x)";
  f.value = [k](double x) { return psi(k, x); };
  f.d1 = [k](double x) { return psi_derivative(k, 1, x); };
  f.d2 = [k](double x) { return psi_derivative(k, 2, x); };
  return f;
}

TestFunction by_id(const std::string& id) {
  if (id == "pole") return gauss_over_quadratic(1.0);
  if (id == "gauss-rational2") return gauss_over_quadratic(2.0);
  if (id == "wavepacket") return wave_packet();
  if (id == "gauss-log") return gauss_log();
  if (id == "twin-gauss") return twin_gauss();
  if (id.size() > 3 && id.compare(0, 3, "psi") == 0) {
    const std::string digits = id.substr(3);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 4) {
      return hermite_function(std::stoi(digits));
    }
  }
  throw InputError("unknown function id '" + id + "'");
}

std::vector<std::string> builtin_ids() {
  return {"pole", "gauss-rational2", "wavepacket", "gauss-log", "twin-gauss", "psi<k>"};
}

}  // namespace functions

}  // namespace hermite
