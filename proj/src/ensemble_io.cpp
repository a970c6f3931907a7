#include "erasure_chi/ensemble_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace erasure_chi {

namespace {

using nlohmann::json;

std::string lineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where, "expected a number");
  return j.get<double>();
}

Complex complexEntry(const json& j, const std::string& where) {
  return {number(member(j, "re", where), where + ".re"), number(member(j, "im", where), where + ".im")};
}

const json& array(const json& j, std::size_t expected, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  if (j.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " entries, got " << j.size();
    throw ParseError(where, os.str());
  }
  return j;
}

ComplexVector complexVector(const json& j, Eigen::Index dim, const std::string& where) {
  array(j, static_cast<std::size_t>(dim), where);
  ComplexVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    v(k) = complexEntry(j[static_cast<std::size_t>(k)], where + "[" + std::to_string(k) + "]");
  return v;
}

DensityMatrix densityMatrix(const json& j, Eigen::Index dim, const std::string& where) {
  array(j, static_cast<std::size_t>(dim), where);
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const std::string row = where + "[" + std::to_string(r) + "]";
    const ComplexVector v = complexVector(j[static_cast<std::size_t>(r)], dim, row);
    m.row(r) = v.transpose();
  }
  try {
    return DensityMatrix(HermitianOperator(std::move(m)));
  } catch (const NonHermitianInput& e) {
    throw ValidationError("hermiticity", where + ": " + e.what());
  } catch (const DomainError& e) {
    throw ValidationError("finiteness", where + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(e.invariant(), where + ": " + e.what());
  }
}

LetterDecomposition decomposition(const json& j, Eigen::Index dim, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where, "expected a non-empty array");
  LetterDecomposition out;
  for (std::size_t a = 0; a < j.size(); ++a) {
    const std::string term = where + "[" + std::to_string(a) + "]";
    const double r = number(member(j[a], "r", term), term + ".r");
    ComplexVector phi = complexVector(member(j[a], "phi", term), dim, term + ".phi");
    try {
      out.push_back({r, PureState(std::move(phi))});
    } catch (const ValidationError& e) {
      throw ValidationError(e.invariant(), term + ".phi: " + e.what());
    }
  }
  return out;
}

void appendNumber(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void appendComplex(std::string& out, Complex z) {
  out += "{\"re\": ";
  appendNumber(out, z.real());
  out += ", \"im\": ";
  appendNumber(out, z.imag());
  out += "}";
}

json parseDocument(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(lineColumn(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
}

Eigen::Index documentDim(const json& doc) {
  const json& dimNode = member(doc, "dim", "$");
  if (!dimNode.is_number_integer() || dimNode.get<long long>() < 1)
    throw ParseError("$.dim", "expected a positive integer");
  return static_cast<Eigen::Index>(dimNode.get<long long>());
}

const json& documentLetters(const json& doc) {
  const json& letters = member(doc, "letters", "$");
  if (!letters.is_array()) throw ParseError("$.letters", "expected an array");
  if (letters.empty()) throw ValidationError("empty", "$.letters: ensemble needs at least one letter");
  return letters;
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

EnsembleFile loadEnsembleFile(std::string_view text) {
  const json doc = parseDocument(text);
  const Eigen::Index dim = documentDim(doc);
  const json& letters = documentLetters(doc);

  std::vector<EnsembleMember> members;
  std::vector<std::optional<LetterDecomposition>> decompositions;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const std::string where = "$.letters[" + std::to_string(i) + "]";
    const double p = number(member(letters[i], "p", where), where + ".p");
    DensityMatrix rho = densityMatrix(member(letters[i], "rho", where), dim, where + ".rho");

    std::optional<LetterDecomposition> decomp;
    if (const auto it = letters[i].find("decomposition"); it != letters[i].end() && !it->is_null()) {
      decomp = decomposition(*it, dim, where + ".decomposition");
      try {
        validateDecomposition(*decomp, rho);
      } catch (const ValidationError& e) {
        throw ValidationError(e.invariant(), where + ".decomposition: " + e.what());
      }
    }
    members.push_back({p, std::move(rho)});
    decompositions.push_back(std::move(decomp));
  }
  return {Ensemble(std::move(members)), std::move(decompositions)};
}

std::vector<DensityMatrix> loadStates(std::string_view text) {
  const json doc = parseDocument(text);
  const Eigen::Index dim = documentDim(doc);
  const json& letters = documentLetters(doc);
  std::vector<DensityMatrix> states;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const std::string where = "$.letters[" + std::to_string(i) + "]";
    states.push_back(densityMatrix(member(letters[i], "rho", where), dim, where + ".rho"));
  }
  return states;
}

std::vector<DensityMatrix> loadStates(const std::filesystem::path& path) {
  return loadStates(std::string_view(readFile(path)));
}

Ensemble loadEnsemble(std::string_view text) { return loadEnsembleFile(text).ensemble; }

EnsembleFile loadEnsembleFile(const std::filesystem::path& path) {
  return loadEnsembleFile(std::string_view(readFile(path)));
}

std::string saveEnsemble(const EnsembleFile& file) {
  const Ensemble& e = file.ensemble;
  const Eigen::Index dim = e.dim();
  std::string out = "{\"dim\": " + std::to_string(dim) + ", \"letters\": [";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += "\n  {\"p\": ";
    appendNumber(out, e.members()[i].probability);
    out += ",\n   \"rho\": [";
    const ComplexMatrix& m = e.members()[i].state.matrix();
    for (Eigen::Index r = 0; r < dim; ++r) {
      out += r ? ",\n           [" : "[";
      for (Eigen::Index c = 0; c < dim; ++c) {
        if (c) out += ", ";
        appendComplex(out, m(r, c));
      }
      out += "]";
    }
    out += "]";
    if (i < file.decompositions.size() && file.decompositions[i]) {
      out += ",\n   \"decomposition\": [";
      const auto& d = *file.decompositions[i];
      for (std::size_t a = 0; a < d.size(); ++a) {
        if (a) out += ", ";
        out += "{\"r\": ";
        appendNumber(out, d[a].weight);
        out += ", \"phi\": [";
        for (Eigen::Index k = 0; k < dim; ++k) {
          if (k) out += ", ";
          appendComplex(out, d[a].state.amplitudes()(k));
        }
        out += "]}";
      }
      out += "]";
    }
    out += "}";
  }
  out += "\n]}\n";
  return out;
}

std::string saveEnsemble(const Ensemble& e) { return saveEnsemble(EnsembleFile{e, {}}); }

}  // namespace erasure_chi
