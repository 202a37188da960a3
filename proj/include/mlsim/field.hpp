/// @file field.hpp
/// @brief Scalar and 2-vector fields held by their Fourier coefficients.
#pragma once

#include "mlsim/grid.hpp"

namespace mlsim {

struct ScalarField {
  GridPtr grid;
  CArray hat;

  ScalarField() = default;
  explicit ScalarField(GridPtr g);
  static ScalarField from_real(GridPtr g, const RArray& values);

  RArray real() const { return grid->inverse(hat); }
};

struct VectorField {
  GridPtr grid;
  CArray c[2];
  bool solenoidal = false;

  VectorField() = default;
  explicit VectorField(GridPtr g);
  static VectorField from_real(GridPtr g, const RArray& a1, const RArray& a2);

  CArray& operator[](int i) { return c[i]; }
  const CArray& operator[](int i) const { return c[i]; }
  RArray real(int i) const { return grid->inverse(c[i]); }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  // this += alpha * x
  void axpy(double alpha, const VectorField& x);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

}  // namespace mlsim
