#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "secrecy/channel.hpp"

namespace secrecy {

// Thrown when a throughput floor exceeds the maximum achievable throughput.
class infeasible_error : public std::runtime_error {
  public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Objective { outage, equivocation, leakage };

// Throughput-constrained rate-design problem: choose (R_b, R_s) subject to
// p_tx * R_s >= gamma. theta applies to the outage objective only.
struct DesignProblem {
    ChannelStats stats;
    double gamma = 0.1;
    double theta = 1.0;
    Objective objective = Objective::outage;

    void validate() const; // throws std::domain_error / infeasible_error
};

// How the optimum was pinned down. The throughput constraint binds in every
// solution (R_b sits on the constraint boundary); the R_s selection is either
// an interior stationary/search point or a feasible-interval endpoint.
enum BindingFlags : unsigned {
    kThroughputBinding = 1u << 0,
    kInteriorOptimum = 1u << 1,
    kBoundaryRsMin = 1u << 2,
    kBoundaryRsMax = 1u << 3,
};

struct DesignSolution {
    double rate_b = 0.0;
    double rate_s = 0.0;
    double objective_value = 0.0; // the metric itself (p_out, avg equivocation, or R_L)
    unsigned binding = 0;
};

// Solutions of exp(-(2^x-1)/gamma_b) x = gamma; R_s must lie inside to meet
// the throughput floor with R_b >= R_s.
struct FeasibleRsInterval {
    double rs_min = 0.0;
    double rs_max = 0.0;
};

// Maximizer and maximum of the diagonal throughput eta(R_b=R_s=x):
// returns (R_s_diamond, gamma_max) with R_s_diamond = W0(gamma_b)/ln 2.
std::pair<double, double> max_throughput(const ChannelStats& stats);

// Feasible R_s interval for throughput floor gamma in (0, gamma_max];
// endpoints satisfy |eta - gamma| <= 1e-10. gamma = 0 is rejected
// (std::domain_error); gamma > gamma_max raises infeasible_error.
FeasibleRsInterval feasible_interval(const ChannelStats& stats, double gamma);

// Codeword rate making the throughput constraint tight for a given R_s:
// R_b = log2(1 - gamma_b ln(gamma / R_s)), never below R_s.
double rate_codeword_at_constraint(const ChannelStats& stats, double gamma, double rate_s);

// Minimize the generalized secrecy outage probability (stationary point of
// R_b(x) - theta x clamped onto the feasible interval).
DesignSolution optimize_outage(const DesignProblem& problem);

// Maximize the average fractional equivocation (golden-section search with a
// coarse-scan safeguard on the equivalent Ei-difference objective).
DesignSolution optimize_equivocation(const DesignProblem& problem);

// Minimize the average information leakage rate (same machinery, objective
// without the 1/x factor).
DesignSolution optimize_leakage(const DesignProblem& problem);

// Exhaustive grid oracle: grid_n values of R_s across the feasible interval,
// R_b on the constraint boundary, argmin/argmax with ties to the lower index.
// Used by tests and the CLI verify/--verify paths.
DesignSolution brute_force_optimize(const DesignProblem& problem, int grid_n);

} // namespace secrecy
