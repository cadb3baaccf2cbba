#include "bdcp/population.hpp"

#include <cmath>

namespace bdcp::population {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

void check_distribution(const DiscreteDistribution &dist, std::size_t atom_count,
                        const char *name) {
    if (dist.weights.size() != atom_count)
        throw InvalidInput(std::string(name) + ": weight count does not match atom count");
    double sum = 0.0;
    for (double w : dist.weights) {
        if (!(w >= 0.0)) throw InvalidInput(std::string(name) + ": negative or NaN weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kWeightSumTolerance)
        throw InvalidInput(std::string(name) + ": weights must sum to 1");
}

}  // namespace

double scale_factor(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
        throw InvalidInput("scale_factor: alpha and beta must lie strictly inside (0,1)");
    return beta >= alpha ? alpha / beta : (1.0 - alpha) / (1.0 - beta);
}

double ball_divergence(const DiscreteDistribution &mu, const DiscreteDistribution &nu,
                       double alpha, const DistanceMatrix &atom_distances) {
    const std::size_t n = atom_distances.size();
    if (n == 0) throw InvalidInput("ball_divergence: empty atom set");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidInput("ball_divergence: alpha must lie in [0,1]");
    check_distribution(mu, n, "mu");
    check_distribution(nu, n, "nu");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (atom_distances.at(i, j) == 0.0)
                throw InvalidInput("ball_divergence: atoms must be distinct under the metric");
        }
    }

    std::vector<double> mixture(n);
    for (std::size_t i = 0; i < n; ++i)
        mixture[i] = alpha * mu.weights[i] + (1.0 - alpha) * nu.weights[i];

    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        if (mixture[u] == 0.0) continue;
        const auto row = atom_distances.row(u);
        for (std::size_t v = 0; v < n; ++v) {
            if (mixture[v] == 0.0) continue;
            const double radius = row[v];
            double mu_mass = 0.0;
            double nu_mass = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (row[k] <= radius) {
                    mu_mass += mu.weights[k];
                    nu_mass += nu.weights[k];
                }
            }
            const double diff = mu_mass - nu_mass;
            total += diff * diff * mixture[u] * mixture[v];
        }
    }
    return total;
}

double detection_function(double beta, double alpha, const DiscreteDistribution &mu,
                          const DiscreteDistribution &nu,
                          const DistanceMatrix &atom_distances) {
    const double h = scale_factor(alpha, beta);
    return beta * (1.0 - beta) * h * h * ball_divergence(mu, nu, alpha, atom_distances);
}

}  // namespace bdcp::population
