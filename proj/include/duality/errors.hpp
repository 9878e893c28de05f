// Copyright 2026 The duality-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception hierarchy shared by every module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace duality {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    /// Stable identifier written to the `error_code` CSV column.
    [[nodiscard]] virtual const char *code() const noexcept { return "Error"; }
};

#define DUALITY_DEFINE_ERROR(Name)                                             \
    class Name : public Error {                                                \
      public:                                                                  \
        using Error::Error;                                                    \
        [[nodiscard]] const char *code() const noexcept override {             \
            return #Name;                                                      \
        }                                                                      \
    }

DUALITY_DEFINE_ERROR(HermiticityError);
DUALITY_DEFINE_ERROR(NumericError);
DUALITY_DEFINE_ERROR(DimensionError);
DUALITY_DEFINE_ERROR(CapacityError);
DUALITY_DEFINE_ERROR(EmptyHamiltonianError);
DUALITY_DEFINE_ERROR(NormalizationError);
DUALITY_DEFINE_ERROR(CoefficientBoundError);
DUALITY_DEFINE_ERROR(UnitarityError);
DUALITY_DEFINE_ERROR(ParameterError);
DUALITY_DEFINE_ERROR(UsageError);

#undef DUALITY_DEFINE_ERROR

class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const char *code() const noexcept override {
        return "ParseError";
    }

  private:
    std::size_t line_;
};

class ConfigError : public Error {
  public:
    ConfigError(std::string field, const std::string &what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    [[nodiscard]] const std::string &field() const noexcept { return field_; }
    [[nodiscard]] const char *code() const noexcept override {
        return "ConfigError";
    }

  private:
    std::string field_;
};

/**
 * Post-selection landed on a (numerically) zero amplitude, so the output
 * state cannot be renormalized. Carries the success probability that was
 * observed and, for multi-segment pipelines, the failing segment.
 */
class ZeroWaveOutcome : public Error {
  public:
    explicit ZeroWaveOutcome(double success_prob, std::size_t segment = 0)
        : Error("post-selection success probability " +
                std::to_string(success_prob) + " at segment " +
                std::to_string(segment)),
          success_prob_(success_prob), segment_(segment) {}
    [[nodiscard]] double success_prob() const noexcept { return success_prob_; }
    [[nodiscard]] std::size_t segment() const noexcept { return segment_; }
    [[nodiscard]] const char *code() const noexcept override {
        return "ZeroWaveOutcome";
    }

  private:
    double success_prob_;
    std::size_t segment_;
};

} // namespace duality
