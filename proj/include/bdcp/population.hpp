#pragma once

#include <vector>

#include "bdcp/metric.hpp"

namespace bdcp::population {

// Finite-support probability distribution over the atom set indexed by a
// companion DistanceMatrix. Atoms a distribution does not load get weight 0.
struct DiscreteDistribution {
    std::vector<double> weights;
};

// Factor relating the divergence observed at mixture fraction `beta` to the
// divergence at the true change fraction `alpha`: alpha/beta when
// beta >= alpha, (1-alpha)/(1-beta) otherwise. Both arguments strictly
// inside (0, 1); the result lies in (0, 1] and equals 1 only at beta == alpha.
double scale_factor(double alpha, double beta);

// Ball divergence between two finite-support distributions, evaluated
// exactly: centers and radius endpoints are drawn from the mixture
// alpha*mu + (1-alpha)*nu, and the squared measure difference is summed
// over every closed ball B(atom_u, d(atom_u, atom_v)). Ball membership uses
// exact `<=` comparisons, ties included.
double ball_divergence(const DiscreteDistribution &mu, const DiscreteDistribution &nu,
                       double alpha, const DistanceMatrix &atom_distances);

// Detection curve beta*(1-beta)*scale_factor(alpha,beta)^2*D_alpha(mu,nu).
// For distinct mu, nu it is maximized exactly at beta == alpha.
double detection_function(double beta, double alpha, const DiscreteDistribution &mu,
                          const DiscreteDistribution &nu,
                          const DistanceMatrix &atom_distances);

}  // namespace bdcp::population
