#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "patcom/corpus.hpp"
#include "patcom/docset.hpp"

namespace patcom::search {

/// Lower-cases ASCII letters and splits on every non-alphanumeric byte.
std::vector<std::string> tokenize(std::string_view text);

enum class Field { Title, Abstract, Claims, Any };

inline constexpr std::array<Field, 3> kTextFields = {Field::Title, Field::Abstract,
                                                     Field::Claims};

/// "TTL", "ABST", "CLMS" or "ANY".
std::string_view to_string(Field f);

/// Claims are indexed as one stream; each claim after the first starts this
/// many positions past the end of the previous one so proximity never spans
/// two claims.
inline constexpr std::uint32_t kClaimPositionGap = 100;
inline constexpr unsigned kDefaultNearWindow = 5;
inline constexpr unsigned kMaxNearWindow = kClaimPositionGap;

using PositionedToken = std::pair<std::string, std::uint32_t>;

/// Tokens of one text field with the positions the index assigns them.
std::vector<PositionedToken> field_tokens(const PatentRecord& r, Field f);

struct Posting {
  DocIndex doc;
  std::vector<std::uint32_t> positions;
};

using PostingList = std::vector<Posting>;

/// Positional inverted index over title, abstract and claims.
class PostingsIndex {
 public:
  static PostingsIndex build(const Corpus& c);

  /// Null when `token` never occurs in `f`. `f` must not be Field::Any.
  const PostingList* lookup(Field f, const std::string& token) const;
  std::size_t vocabulary_size(Field f) const;
  std::size_t corpus_size() const noexcept { return corpus_size_; }

  template <typename Fn>
  void for_each(Field f, Fn&& fn) const {
    for (const auto& [token, list] : fields_[slot(f)]) fn(token, list);
  }

 private:
  static std::size_t slot(Field f);
  std::array<std::unordered_map<std::string, PostingList>, 3> fields_;
  std::size_t corpus_size_ = 0;
};

enum class NodeKind { Term, And, Or, Not, Near, DocTypeFilter };

/// Boolean query tree. A Term holds normalized tokens; a non-phrase Term with
/// several tokens requires all of them within the one field. Near has exactly
/// two Term children, Not exactly one child.
struct QueryNode {
  NodeKind kind = NodeKind::Term;
  Field field = Field::Any;
  std::vector<std::string> tokens;
  bool phrase = false;
  std::vector<QueryNode> children;
  unsigned window = kDefaultNearWindow;
  DocType doc_type = DocType::Issued;

  static QueryNode term(Field f, std::vector<std::string> tokens, bool phrase = false);
  static QueryNode all_of(std::vector<QueryNode> children);
  static QueryNode any_of(std::vector<QueryNode> children);
  static QueryNode negate(QueryNode child);
  static QueryNode near(QueryNode left, QueryNode right,
                        unsigned window = kDefaultNearWindow);
  static QueryNode doc_type_filter(DocType t);

  friend bool operator==(const QueryNode&, const QueryNode&) = default;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, std::string expected);
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// Parses the field-scoped query language, e.g.
/// `TTL:(bipolar transistor) OR ABST:("gap junction") AND DOCUMENT_TYPE: issued`.
/// AND binds tighter than OR; NOT is prefix; NEAR/k joins two terms.
QueryNode parse_query(std::string_view text);

/// Query text that parses back to the same tree, provided no bare term is an
/// operator keyword.
std::string to_string(const QueryNode& q);

/// Pretty-printed JSON rendering of the tree.
std::string explain(const QueryNode& q);

/// Doc types named by DocTypeFilter nodes anywhere in the tree.
std::vector<DocType> doc_type_filters(const QueryNode& q);

struct EvalOptions {
  /// Universe used when the query carries no DocTypeFilter of its own.
  std::optional<DocType> default_doc_type;
};

/// The records a query is evaluated against: records whose type is named by
/// a DocTypeFilter in `q`, else `opts.default_doc_type`, else the corpus.
DocSet query_universe(const QueryNode& q, const Corpus& c, const EvalOptions& opts = {});

/// Set-semantics evaluation. Every result, including complements, lies
/// within query_universe().
DocSet evaluate(const QueryNode& q, const PostingsIndex& idx, const Corpus& c,
                const EvalOptions& opts = {});

}  // namespace patcom::search
