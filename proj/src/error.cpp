#include "abc_arma/error.hpp"

#include <sstream>

namespace abc_arma {

namespace {

std::string empty_posterior_message(const std::string& stage, double min_distance, double epsilon) {
    std::ostringstream msg;
    msg << "empty posterior in " << stage << " stage: no proposal within epsilon = " << epsilon
        << " (minimum distance " << min_distance << "); raise epsilon or n_proposals";
    return msg.str();
}

}  // namespace

empty_posterior::empty_posterior(std::string stage, double min_distance, double epsilon)
    : error(empty_posterior_message(stage, min_distance, epsilon)),
      stage_(std::move(stage)),
      min_distance_(min_distance),
      epsilon_(epsilon) {}

}  // namespace abc_arma
