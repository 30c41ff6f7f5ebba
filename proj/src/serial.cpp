#include "del/serial.hpp"

#include <cmath>

#include "del/errors.hpp"
#include "del/expansion.hpp"
#include "del/reduce.hpp"

namespace del::serial {

std::pair<ModalVector, ModalVector> evolve(const ModalOperator& op,
                                           const CauchyPair& data, double t) {
  require_match(op, data, "serial::evolve");
  const std::size_t n = op.size();
  ModalVector u(n), up(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ModeState st =
        mode_solve(op.modes[j].lambda, data.u0[j], data.u1[j], t);
    u[j] = st.value;
    up[j] = st.derivative;
  }
  return {std::move(u), std::move(up)};
}

ModalVector heat_apply(const ModalOperator& op, const ModalVector& f,
                       double t) {
  require_match(op, f, "serial::heat_apply");
  ModalVector out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    out[j] = f[j] * std::exp(-op.modes[j].lambda * t);
  }
  return out;
}

ModalVector partial_sum_V(int n, const ModalOperator& op,
                          const CauchyPair& data, double t) {
  require_match(op, data, "serial::partial_sum_V");
  ModalVector out(op.size(), 0.0);
  for (std::size_t j = 0; j < op.size(); ++j) {
    const double v00 = data.u0[j] + data.u1[j];
    double acc = 0.0;
    for (int ell = 0; ell < n; ++ell) {
      acc += profile_v_mode(ell, op.modes[j].lambda, v00, data.u0[j], t);
    }
    out[j] = acc;
  }
  return out;
}

double l2_sq(const ModalOperator& op, const ModalVector& f) {
  require_match(op, f, "serial::l2_sq");
  CompensatedSum acc;
  for (std::size_t j = 0; j < op.size(); ++j) {
    acc.add(op.modes[j].weight * f[j] * f[j]);
  }
  return acc.value();
}

double energy(const ModalOperator& op, const ModalVector& u,
              const ModalVector& uprime) {
  require_match(op, u, "serial::energy");
  require_match(op, uprime, "serial::energy");
  CompensatedSum acc;
  for (std::size_t j = 0; j < op.size(); ++j) {
    acc.add(op.modes[j].weight *
            (uprime[j] * uprime[j] + op.modes[j].lambda * u[j] * u[j]));
  }
  return acc.value();
}

double h_norm_sq(const ModalOperator& op, const ModalVector& f,
                 const ModalVector& g) {
  require_match(op, f, "serial::h_norm_sq");
  require_match(op, g, "serial::h_norm_sq");
  CompensatedSum acc;
  for (std::size_t j = 0; j < op.size(); ++j) {
    const double fj = f[j];
    const double shifted = g[j] + 0.5 * fj;
    acc.add(op.modes[j].weight * (op.modes[j].lambda * fj * fj +
                                  0.25 * fj * fj + shifted * shifted));
  }
  return acc.value();
}

ModalVector analyze(const RealizedDomain& d, const std::vector<double>& f) {
  const std::size_t n = d.size();
  if (f.size() != n) {
    throw shape_error("serial::analyze: grid function length mismatch");
  }
  ModalVector c(n);
  for (std::size_t k = 0; k < n; ++k) {
    CompensatedSum acc;
    const double* phi = d.eigenbasis.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(d.grid.cellweights[i] * phi[i] * f[i]);
    }
    c[k] = acc.value();
  }
  return c;
}

std::vector<double> synthesize(const RealizedDomain& d, const ModalVector& c) {
  const std::size_t n = d.size();
  if (c.size() != n) {
    throw shape_error("serial::synthesize: coefficient length mismatch");
  }
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) {
      acc.add(c[k] * d.eigenbasis[k * n + i]);
    }
    f[i] = acc.value();
  }
  return f;
}

}  // namespace del::serial
