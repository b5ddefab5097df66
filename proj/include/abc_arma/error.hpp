#pragma once

#include <stdexcept>
#include <string>

namespace abc_arma {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite coefficients, mismatched lengths, bad configuration values.
class invalid_input : public error {
public:
    using error::error;
};

/// Series too short for the requested operation.
class insufficient_data : public error {
public:
    using error::error;
};

/// Series with zero variance where a normalisation needs a positive one.
class degenerate_series : public error {
public:
    using error::error;
};

/// Parameters that fail the stationarity or invertibility check.
class validation_error : public error {
public:
    using error::error;
};

/// Prior rejection sampler hit its attempt cap.
class sampling_stalled : public error {
public:
    using error::error;
};

/// No ABC proposal fell within the acceptance threshold.
class empty_posterior : public error {
public:
    empty_posterior(std::string stage, double min_distance, double epsilon);

    const std::string& stage() const noexcept { return stage_; }
    double min_distance() const noexcept { return min_distance_; }
    double epsilon() const noexcept { return epsilon_; }

private:
    std::string stage_;
    double min_distance_;
    double epsilon_;
};

}  // namespace abc_arma
