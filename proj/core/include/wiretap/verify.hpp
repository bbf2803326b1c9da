#pragma once

#include <string>
#include <vector>

#include "wiretap/relations.hpp"

// Self-contained numeric certificates for the library's identities and
// bounds. Each suite runs a fixed battery (fixed seeds, fixed grids) and
// returns one RelationCheck per claim; randomized families are folded into
// a single record carrying the tightest instance found. Reruns produce
// byte-identical results.

namespace wiretap {

std::vector<RelationCheck> verify_probcore();
std::vector<RelationCheck> verify_relations();
std::vector<RelationCheck> verify_xtx();
std::vector<RelationCheck> verify_hash();

// name is one of probcore, relations, xtx, hash, all; throws ParseError
// otherwise. "all" concatenates the four suites in that order.
std::vector<RelationCheck> verify_suite(const std::string& name);

// True when no record failed. precondition-not-met entries do not count as
// failures: they witness a guard declining out-of-scope input.
bool suite_passed(const std::vector<RelationCheck>& checks);

}  // namespace wiretap
