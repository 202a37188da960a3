#include "mlsim/field.hpp"

#include <stdexcept>

#include "mlsim/kernels.hpp"

namespace mlsim {

ScalarField::ScalarField(GridPtr g) : grid(std::move(g)), hat(grid->size()) {}

ScalarField ScalarField::from_real(GridPtr g, const RArray& values) {
  ScalarField f;
  f.hat = g->forward(values);
  f.grid = std::move(g);
  return f;
}

VectorField::VectorField(GridPtr g) : grid(std::move(g)) {
  c[0].assign(grid->size(), cplx{});
  c[1].assign(grid->size(), cplx{});
  solenoidal = true;
}

VectorField VectorField::from_real(GridPtr g, const RArray& a1, const RArray& a2) {
  VectorField f;
  f.c[0] = g->forward(a1);
  f.c[1] = g->forward(a2);
  f.grid = std::move(g);
  f.solenoidal = false;
  return f;
}

namespace {
void check_same(const VectorField& a, const VectorField& b) {
  if (a.grid != b.grid && (a.grid->N() != b.grid->N() || a.grid->L() != b.grid->L()))
    throw std::invalid_argument("fields live on different grids");
}
}  // namespace

VectorField& VectorField::operator+=(const VectorField& o) {
  axpy(1.0, o);
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  axpy(-1.0, o);
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& comp : c)
    for (auto& z : comp) z *= s;
  return *this;
}

void VectorField::axpy(double alpha, const VectorField& x) {
  check_same(*this, x);
  for (int i = 0; i < 2; ++i) kernels::omp::axpy(c[i].size(), alpha, x.c[i].data(), c[i].data());
  solenoidal = solenoidal && x.solenoidal;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

}  // namespace mlsim
