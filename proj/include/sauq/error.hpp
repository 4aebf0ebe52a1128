#ifndef SAUQ_ERROR_HPP
#define SAUQ_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sauq {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter or distribution definition.
class SpecificationError : public Error {
 public:
  using Error::Error;
};

/// Bad argument to an operation (sizes, counts, enum values).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or otherwise unusable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Zero-variance column or singular correlation structure.
class DegenerateDataError : public DataError {
 public:
  using DataError::DataError;
};

/// Model input outside the model's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class LinearAlgebraError : public Error {
 public:
  using Error::Error;
};

/// Estimator quantity too close to a singularity to be trusted.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A model evaluation failed inside a sampling loop; carries the sample row.
class ModelError : public Error {
 public:
  ModelError(std::size_t sample, const std::string& what)
      : Error("model evaluation failed at sample " + std::to_string(sample) + ": " + what),
        sample_(sample) {}

  std::size_t sample() const noexcept { return sample_; }

 private:
  std::size_t sample_;
};

}  // namespace sauq

#endif  // SAUQ_ERROR_HPP
