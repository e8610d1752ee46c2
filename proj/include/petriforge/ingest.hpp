#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "petriforge/errors.hpp"
#include "petriforge/net.hpp"

namespace petriforge {

/// Where each declaration came from, for diagnostics. Not part of document
/// identity.
struct SourceSpans {
  std::vector<SourcePos> places;
  std::vector<SourcePos> transitions;
};

/// A named, annotated net as read from or written to a file.
struct NetDocument {
  std::string name;
  PetriNet net;
  NetAnnotations annotations;
  SourceSpans spans;
  std::vector<std::string> warnings;

  /// Compares name, net and annotations only.
  friend bool operator==(const NetDocument& a, const NetDocument& b) {
    return a.name == b.name && a.net == b.net && a.annotations == b.annotations;
  }
};

/// Line-oriented net syntax:
///
///   net NAME
///   place ID [tokens=N] [action=NAME]
///   trans ID [action=NAME]
///   arc SRC -> DST [weight=N]
///
/// '#' starts a comment. Exactly one arc endpoint must be a place.
/// Throws ParseError or SemanticError, both carrying line and column.
NetDocument parse_dsl(std::string_view text);

/// Canonical text: declarations in stored order, arcs sorted by place,
/// transition, then direction (input arc first). LF line endings.
std::string emit_dsl(const NetDocument& doc);

/// PNML place/transition core. The first <net> is read; further nets are
/// reported in NetDocument::warnings. Throws XmlError, UnsupportedFeatureError
/// or SemanticError.
NetDocument parse_pnml(std::string_view xml);

/// Canonical PNML; action annotations go into toolspecific elements of the
/// "petriforge" tool.
std::string emit_pnml(const NetDocument& doc);

enum class DocumentFormat { Dsl, Pnml };

/// ".pnml" and ".xml" select PNML; anything else is the DSL.
DocumentFormat format_for_path(const std::filesystem::path& path);

/// Reads a file. Throws std::system_error when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

NetDocument load_document(const std::filesystem::path& path, std::optional<DocumentFormat> format = std::nullopt);

}  // namespace petriforge
