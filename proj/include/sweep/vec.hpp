#ifndef SWEEP_VEC_HPP
#define SWEEP_VEC_HPP

#include <Eigen/Dense>
#include <initializer_list>

namespace sweep {

using Vec = Eigen::VectorXd;

inline bool allFinite(const Vec& x) { return x.allFinite(); }

inline Vec vec(std::initializer_list<double> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

inline Vec vec1(double x) {
  Vec v(1);
  v[0] = x;
  return v;
}

}  // namespace sweep

#endif
