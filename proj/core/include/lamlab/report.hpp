#pragma once

#include "lamlab/equivalence.hpp"
#include "lamlab/strategy.hpp"
#include "lamlab/term.hpp"

#include <string>
#include <vector>

// JSON renderings of the non-evaluating operations.  The command-line tool
// prints these verbatim.
namespace lamlab {

std::string classification_to_json(const Term& t, FormSet forms);
std::string validation_to_json(const StrategySpec& s, const ValidationReport& r);
std::string fuse_to_json(const ReadbackEncoding& er, const FuseResult& r);
std::string defuse_to_json(const HybridEncoding& hy, const std::vector<ReadbackEncoding>& ers);
std::string catalogue_to_json(const std::vector<CatalogueEntry>& rows);
std::string verdict_to_json(const StrategySpec& a, const StrategySpec& b, const Term& t, const CompareVerdict& v);
std::string corpus_to_json(const std::vector<Term>& terms, const std::vector<std::string>& names = {});

// "HSH<>ISS (sn), mcr=true"
std::string fuse_to_text(const FuseResult& r);

} // namespace lamlab
