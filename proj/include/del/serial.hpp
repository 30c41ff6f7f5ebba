#pragma once

#include <utility>

#include "del/domains.hpp"
#include "del/spectral.hpp"

namespace del::serial {

//============================================================================
// Plain-loop reference implementations of the parallel kernels.  These run
// the identical per-element arithmetic and the identical deterministic
// reduction, so the OpenMP versions must agree with them bitwise on every
// input — the parity test suite and the kernel benchmark both rely on that.
//============================================================================

std::pair<ModalVector, ModalVector> evolve(const ModalOperator& op,
                                           const CauchyPair& data, double t);

ModalVector heat_apply(const ModalOperator& op, const ModalVector& f,
                       double t);

ModalVector partial_sum_V(int n, const ModalOperator& op,
                          const CauchyPair& data, double t);

double l2_sq(const ModalOperator& op, const ModalVector& f);

double energy(const ModalOperator& op, const ModalVector& u,
              const ModalVector& uprime);

double h_norm_sq(const ModalOperator& op, const ModalVector& f,
                 const ModalVector& g);

ModalVector analyze(const RealizedDomain& d, const std::vector<double>& f);

std::vector<double> synthesize(const RealizedDomain& d, const ModalVector& c);

}  // namespace del::serial
