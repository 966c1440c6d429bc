#pragma once

#include "eftlab/criteria.hpp"

namespace eftlab {

enum class PhiKind { Power, Entropy, Custom };

/// Weight function for the sublevel-measure class: phi(0) = 0, nondecreasing
/// and positive on (0, gamma], quasi-additive up to a constant.
class PhiFn {
  public:
    static PhiFn power(double beta);  ///< phi(t) = t^beta, any t >= 0
    static PhiFn entropy();           ///< phi(t) = t(-ln t) on [0, e^{-1}]
    /// Monotone table with >= 3 log-spaced abscissae; log-log interpolation
    /// with the first segment's power law extended toward 0.
    static PhiFn custom_table(std::vector<double> t, std::vector<double> phi);

    double operator()(double t) const;
    double gamma() const { return gamma_; }  ///< upper end of the validity interval
    PhiKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

  private:
    PhiFn() = default;
    PhiKind kind_ = PhiKind::Power;
    double beta_ = 1.0;
    double gamma_ = 0.0;
    std::vector<double> tab_t_, tab_phi_;
    std::string name_;
};

/// phi grammar: "phi:power:beta=0.5", "phi:entropy".
PhiFn parse_phi(const std::string& text);

struct PhiAxiomReport {
    bool zero_at_zero = false;          // axiom 1
    bool nondecreasing = false;         // axiom 2
    bool positive = false;              // axiom 3
    bool quasi_additive_sampled = false;  // axiom 4, sampled estimate only
    double c_estimate = 0.0;            // max phi(a+b) / (phi(a)+phi(b)) over samples
    double doubling_limsup = 0.0;       // sampled limsup of phi(2t)/phi(t) near 0
    bool midpoint_convex = false;       // axiom 4' first half
    int samples = 0;

    bool all_pass() const { return zero_at_zero && nondecreasing && positive && quasi_additive_sampled; }
};

/// Samples the axioms on a log-spaced grid; the quasi-additivity constant is
/// a sampled estimate (the inequality can only be falsified numerically).
PhiAxiomReport phi_axioms_check(const PhiFn& phi, int samples = 400);

/// Classifies the phi-weighted sublevel integral of the potential: the upper
/// limit is the largest c <= e^{-1} with M_a(c) inside phi's validity
/// interval. Throws std::invalid_argument when no such c exists.
IntegralVerdict sphi_membership(const PotentialSpec& spec, const PhiFn& phi);

}  // namespace eftlab
