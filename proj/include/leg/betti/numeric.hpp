#pragma once

// Scalar types for the numerical side.  Kernels are templated on a complex
// type C; double, 128-bit and 256-bit binary floats are compiled in.

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace leg {

namespace mp = boost::multiprecision;

using R128 = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>, mp::et_off>;
using C128 = mp::number<mp::complex_adaptor<mp::cpp_bin_float<128, mp::digit_base_2>>, mp::et_off>;
using R256 = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>, mp::et_off>;
using C256 = mp::number<mp::complex_adaptor<mp::cpp_bin_float<256, mp::digit_base_2>>, mp::et_off>;
using Cd = std::complex<double>;

template <class C>
struct NumTraits;
template <>
struct NumTraits<Cd> {
  using Real = double;
  static constexpr int bits = 53;
};
template <>
struct NumTraits<C128> {
  using Real = R128;
  static constexpr int bits = 128;
};
template <>
struct NumTraits<C256> {
  using Real = R256;
  static constexpr int bits = 256;
};

template <class C>
using real_t = typename NumTraits<C>::Real;

template <class C>
real_t<C> pi_v() {
  return boost::math::constants::pi<real_t<C>>();
}

template <class C>
real_t<C> eps_v() {
  return std::numeric_limits<real_t<C>>::epsilon();
}

template <class C>
C cx(const real_t<C>& re, const real_t<C>& im = 0) {
  return C(re, im);
}

template <class C>
Cd to_cd(const C& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class C>
C from_cd(const Cd& z) {
  return C(real_t<C>(z.real()), real_t<C>(z.imag()));
}

// Raised when a result cannot be trusted at the working precision.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest compiled precision >= bits (0 if none).
inline int compiled_precision(int bits) {
  for (int b : {53, 128, 256})
    if (bits <= b) return b;
  return 0;
}

}  // namespace leg
