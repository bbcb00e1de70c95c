#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lamshift/syntax.hpp"

namespace lamshift {

enum class VerdictClass { Bisimilar, NotBisimilar, Inconclusive };
enum class DistinguisherExpectation { Found, NotFoundAtBound };

const char* to_string(VerdictClass v);
const char* to_string(DistinguisherExpectation d);

struct Fixture {
  std::string name;
  Term left;
  Term right;
  VerdictClass expected_plain;
  VerdictClass expected_refined;
  DistinguisherExpectation expected_distinguisher;
  std::string source;
};

// Fixture file format: one stanza per fixture, fields `name:`, `left:`,
// `right:`, `plain:`, `refined:`, `distinguisher:`, `source:`; terms in
// the surface syntax, `--` comments allowed.
std::vector<Fixture> load_corpus(std::istream& in, const std::string& what = "<corpus>");
std::vector<Fixture> load_corpus_file(const std::string& path);
// The corpus shipped with the tree.
std::vector<Fixture> load_corpus();

}  // namespace lamshift
