#include "lamshift/corpus.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "lamshift/parse.hpp"

namespace lamshift {

const char* to_string(VerdictClass v) {
  switch (v) {
    case VerdictClass::Bisimilar: return "bisimilar";
    case VerdictClass::NotBisimilar: return "not-bisimilar";
    default: return "inconclusive";
  }
}

const char* to_string(DistinguisherExpectation d) {
  return d == DistinguisherExpectation::Found ? "found" : "not-found";
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

VerdictClass parse_verdict_class(const std::string& s, const std::string& where) {
  if (s == "bisimilar") return VerdictClass::Bisimilar;
  if (s == "not-bisimilar") return VerdictClass::NotBisimilar;
  if (s == "inconclusive") return VerdictClass::Inconclusive;
  throw std::runtime_error(where + ": unknown verdict class '" + s + "'");
}

DistinguisherExpectation parse_dist(const std::string& s, const std::string& where) {
  if (s == "found") return DistinguisherExpectation::Found;
  if (s == "not-found" || s == "not-found-at-bound") return DistinguisherExpectation::NotFoundAtBound;
  throw std::runtime_error(where + ": unknown distinguisher expectation '" + s + "'");
}

}  // namespace

std::vector<Fixture> load_corpus(std::istream& in, const std::string& what) {
  std::vector<Fixture> out;
  struct Raw {
    std::string name, left, right, plain, refined, dist, source;
  };
  Raw cur;
  int lineno = 0;
  bool open = false;

  auto where = [&](const std::string& name) { return what + ", fixture '" + name + "'"; };
  auto flush = [&] {
    if (!open) return;
    const std::string w = where(cur.name);
    auto require = [&](const char* field, const std::string& value) {
      if (value.empty()) throw std::runtime_error(w + ": missing field '" + field + "'");
    };
    require("left", cur.left);
    require("right", cur.right);
    require("plain", cur.plain);
    require("refined", cur.refined);
    require("distinguisher", cur.dist);
    Fixture f;
    f.name = cur.name;
    try {
      f.left = parse(cur.left);
      f.right = parse(cur.right);
    } catch (const ParseError& e) {
      throw std::runtime_error(w + ": " + e.what());
    }
    f.expected_plain = parse_verdict_class(cur.plain, w);
    f.expected_refined = parse_verdict_class(cur.refined, w);
    f.expected_distinguisher = parse_dist(cur.dist, w);
    f.source = cur.source;
    out.push_back(std::move(f));
    cur = Raw{};
    open = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    auto comment = line.find("--");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error(what + ":" + std::to_string(lineno) + ": expected 'field: value'");
    std::string field = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (field == "name") {
      flush();
      open = true;
      cur.name = value;
    } else if (!open) {
      throw std::runtime_error(what + ":" + std::to_string(lineno) + ": field before any 'name:'");
    } else if (field == "left") {
      cur.left = value;
    } else if (field == "right") {
      cur.right = value;
    } else if (field == "plain") {
      cur.plain = value;
    } else if (field == "refined") {
      cur.refined = value;
    } else if (field == "distinguisher") {
      cur.dist = value;
    } else if (field == "source") {
      cur.source = value;
    } else {
      throw std::runtime_error(what + ":" + std::to_string(lineno) + ": unknown field '" + field +
                               "'");
    }
  }
  flush();
  return out;
}

std::vector<Fixture> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  return load_corpus(in, path);
}

std::vector<Fixture> load_corpus() {
#ifdef LAMSHIFT_DEFAULT_CORPUS
  return load_corpus_file(LAMSHIFT_DEFAULT_CORPUS);
#else
  throw std::runtime_error("no default corpus path configured");
#endif
}

}  // namespace lamshift
