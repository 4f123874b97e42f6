#pragma once

#include "lamlab/engine.hpp"
#include "lamlab/strategy.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace lamlab {

enum class FactorialEncoding : std::uint8_t {
    Direct,     // Y F_direct n
    ThunkLambda, // Z F_thunkLambda n I
    DelimCps,   // Y F_delimcps n I
};

std::string to_string(FactorialEncoding e);

struct FactorialReport {
    std::string strategy; // display form
    unsigned n = 0;
    FactorialEncoding encoding = FactorialEncoding::Direct;
    Term term;
    Outcome outcome;      // trace not recorded
    bool full_reducing = false;
    std::uint64_t expected = 0; // n!
    long long value = -1;       // Church value of the result, -1 if none
    FormClass expected_form = FormClass::NF;
    FormSet forms;        // classification of the result
    bool success = false; // exact value for full-reducing rows, form membership otherwise
};

// Strategy rows with a prescribed factorial encoding; anything else is a
// DomainError.
std::optional<FactorialEncoding> factorial_encoding(const StrategySpec& s);
Term factorial_term(FactorialEncoding e, unsigned n);

FactorialReport demo_factorial(const StrategySpec& s, unsigned n, std::uint64_t fuel);
std::string factorial_report_to_json(const FactorialReport& r);

} // namespace lamlab
