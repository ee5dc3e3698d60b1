#include "leg/betti/betti.hpp"

namespace leg {

FiberModel FiberModel::make(const QPoly& x, Chart chart) {
  FiberModel m;
  m.chart = chart;
  const QPoly t = QPoly::x(), one(Q(1));
  switch (chart) {
    case Chart::Zero:
      m.p = {t, one - t, x, x - one, x - t, x.derivative()};
      break;
    case Chart::One: {
      const QPoly X = x.compose(one + t);
      m.p = {one + t, -t, X, X - one, X - one - t, x.derivative().compose(one + t)};
      break;
    }
    case Chart::Infinity: {
      if (x.degree() > 1) throw std::domain_error("chart at infinity needs deg x <= 1");
      // x / l on the curve with parameter t = 1/l
      const QPoly X = t.scaled(x.coeff(0)) + QPoly(x.coeff(1));
      m.p = {t, one - t, X, X - one, X - t, QPoly(x.coeff(0))};
      break;
    }
  }
  return m;
}

Cd FiberModel::chart_coordinate(Chart c, Cd lambda) {
  switch (c) {
    case Chart::Zero:
      return lambda;
    case Chart::One:
      return lambda - 1.0;
    case Chart::Infinity:
      return 1.0 / lambda;
  }
  return lambda;
}

}  // namespace leg
