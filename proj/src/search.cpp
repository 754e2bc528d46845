#include "patcom/search.hpp"

#include <algorithm>
#include <set>

namespace patcom::search {

namespace {

bool is_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

const std::vector<std::uint32_t>* positions_in(const PostingList& list, DocIndex doc) {
  auto it = std::lower_bound(list.begin(), list.end(), doc,
                             [](const Posting& p, DocIndex d) { return p.doc < d; });
  if (it == list.end() || it->doc != doc) return nullptr;
  return &it->positions;
}

DocSet docs_of(const PostingList& list) {
  DocSet out;
  out.reserve(list.size());
  for (const auto& p : list) out.push_back(p.doc);
  return out;
}

class Evaluator {
 public:
  Evaluator(const PostingsIndex& idx, const Corpus& c, DocSet universe)
      : idx_(idx), corpus_(c), universe_(std::move(universe)) {}

  DocSet eval(const QueryNode& q) const {
    switch (q.kind) {
      case NodeKind::Term: return set_intersection(term(q), universe_);
      case NodeKind::And: {
        if (q.children.empty()) return universe_;
        DocSet acc = eval(q.children.front());
        for (std::size_t i = 1; i < q.children.size() && !acc.empty(); ++i)
          acc = set_intersection(acc, eval(q.children[i]));
        return acc;
      }
      case NodeKind::Or: {
        DocSet acc;
        for (const auto& child : q.children) acc = set_union(acc, eval(child));
        return acc;
      }
      case NodeKind::Not: return set_difference(universe_, eval(q.children.at(0)));
      case NodeKind::Near: return set_intersection(near(q), universe_);
      case NodeKind::DocTypeFilter: {
        DocSet out;
        for (DocIndex i : universe_)
          if (corpus_[i].doc_type == q.doc_type) out.push_back(i);
        return out;
      }
    }
    return {};
  }

 private:
  DocSet term(const QueryNode& q) const {
    if (q.field != Field::Any) return term_in(q, q.field);
    DocSet acc;
    for (Field f : kTextFields) acc = set_union(acc, term_in(q, f));
    return acc;
  }

  DocSet term_in(const QueryNode& q, Field f) const {
    if (q.tokens.empty()) return {};
    std::vector<const PostingList*> lists;
    for (const auto& tok : q.tokens) {
      const PostingList* list = idx_.lookup(f, tok);
      if (!list) return {};
      lists.push_back(list);
    }
    DocSet candidates = docs_of(*lists.front());
    for (std::size_t i = 1; i < lists.size(); ++i)
      candidates = set_intersection(candidates, docs_of(*lists[i]));
    if (!q.phrase || lists.size() == 1) return candidates;

    DocSet out;
    for (DocIndex doc : candidates)
      if (!phrase_starts(lists, doc).empty()) out.push_back(doc);
    return out;
  }

  // Positions where every token of a phrase occurs consecutively.
  static std::vector<std::uint32_t> phrase_starts(
      const std::vector<const PostingList*>& lists, DocIndex doc) {
    std::vector<std::uint32_t> starts;
    const auto* first = positions_in(*lists.front(), doc);
    if (!first) return starts;
    for (std::uint32_t p : *first) {
      bool ok = true;
      for (std::size_t k = 1; k < lists.size() && ok; ++k) {
        const auto* pos = positions_in(*lists[k], doc);
        ok = pos && std::binary_search(pos->begin(), pos->end(),
                                       p + static_cast<std::uint32_t>(k));
      }
      if (ok) starts.push_back(p);
    }
    return starts;
  }

  // Occurrence positions of a single-token or phrase term in one document.
  std::vector<std::uint32_t> occurrences(const QueryNode& t, Field f, DocIndex doc) const {
    std::vector<const PostingList*> lists;
    for (const auto& tok : t.tokens) {
      const PostingList* list = idx_.lookup(f, tok);
      if (!list) return {};
      lists.push_back(list);
    }
    if (lists.size() == 1) {
      const auto* pos = positions_in(*lists.front(), doc);
      return pos ? *pos : std::vector<std::uint32_t>{};
    }
    return phrase_starts(lists, doc);
  }

  static bool within(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b, unsigned window) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      const std::uint32_t d = a[i] > b[j] ? a[i] - b[j] : b[j] - a[i];
      if (d <= window) return true;
      if (a[i] < b[j]) ++i;
      else ++j;
    }
    return false;
  }

  DocSet near(const QueryNode& q) const {
    const QueryNode& left = q.children.at(0);
    const QueryNode& right = q.children.at(1);
    for (const auto* t : {&left, &right}) {
      if (t->kind != NodeKind::Term)
        throw std::invalid_argument("NEAR operands must be terms");
      if (t->tokens.size() > 1 && !t->phrase)
        throw std::invalid_argument("NEAR operands must be single terms or phrases");
    }
    if (left.field != right.field)
      throw std::invalid_argument("NEAR operands must share a field");

    DocSet out;
    auto scan = [&](Field f) {
      QueryNode l = left;
      QueryNode r = right;
      l.field = r.field = f;
      for (DocIndex doc : set_intersection(term_in(l, f), term_in(r, f)))
        if (within(occurrences(l, f, doc), occurrences(r, f, doc), q.window))
          out.push_back(doc);
    };
    if (left.field != Field::Any) {
      scan(left.field);
      return out;
    }
    for (Field f : kTextFields) {
      DocSet before = std::move(out);
      out.clear();
      scan(f);
      out = set_union(before, out);
    }
    return out;
  }

  const PostingsIndex& idx_;
  const Corpus& corpus_;
  DocSet universe_;
};

void collect_doc_types(const QueryNode& q, std::set<DocType>& out) {
  if (q.kind == NodeKind::DocTypeFilter) out.insert(q.doc_type);
  for (const auto& c : q.children) collect_doc_types(c, out);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (is_alnum(c)) {
      cur.push_back(lower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::Title: return "TTL";
    case Field::Abstract: return "ABST";
    case Field::Claims: return "CLMS";
    case Field::Any: return "ANY";
  }
  return "ANY";
}

std::vector<PositionedToken> field_tokens(const PatentRecord& r, Field f) {
  std::vector<PositionedToken> out;
  auto append = [&](std::string_view text, std::uint32_t start) {
    std::uint32_t pos = start;
    for (auto& tok : tokenize(text)) out.emplace_back(std::move(tok), pos++);
    return pos;
  };
  switch (f) {
    case Field::Title: append(r.title, 0); break;
    case Field::Abstract: append(r.abstract, 0); break;
    case Field::Claims: {
      std::uint32_t pos = 0;
      for (std::size_t i = 0; i < r.claims.size(); ++i) {
        if (i > 0) pos += kClaimPositionGap;
        pos = append(r.claims[i], pos);
      }
      break;
    }
    case Field::Any: throw std::invalid_argument("field_tokens needs a concrete field");
  }
  return out;
}

std::size_t PostingsIndex::slot(Field f) {
  switch (f) {
    case Field::Title: return 0;
    case Field::Abstract: return 1;
    case Field::Claims: return 2;
    case Field::Any: break;
  }
  throw std::invalid_argument("postings are per concrete field");
}

PostingsIndex PostingsIndex::build(const Corpus& c) {
  PostingsIndex idx;
  idx.corpus_size_ = c.size();
  for (DocIndex doc = 0; doc < c.size(); ++doc) {
    for (Field f : kTextFields) {
      auto& map = idx.fields_[slot(f)];
      for (auto& [tok, pos] : field_tokens(c[doc], f)) {
        auto& list = map[tok];
        // Records are visited in index order and positions ascend per field.
        if (list.empty() || list.back().doc != doc) list.push_back({doc, {}});
        list.back().positions.push_back(pos);
      }
    }
  }
  return idx;
}

const PostingList* PostingsIndex::lookup(Field f, const std::string& token) const {
  const auto& map = fields_[slot(f)];
  auto it = map.find(token);
  return it == map.end() ? nullptr : &it->second;
}

std::size_t PostingsIndex::vocabulary_size(Field f) const {
  return fields_[slot(f)].size();
}

std::vector<DocType> doc_type_filters(const QueryNode& q) {
  std::set<DocType> types;
  collect_doc_types(q, types);
  return {types.begin(), types.end()};
}

DocSet query_universe(const QueryNode& q, const Corpus& c, const EvalOptions& opts) {
  const auto types = doc_type_filters(q);
  if (types.empty()) return c.with_doc_type(opts.default_doc_type);
  DocSet out;
  for (DocIndex i = 0; i < c.size(); ++i)
    if (std::find(types.begin(), types.end(), c[i].doc_type) != types.end())
      out.push_back(i);
  return out;
}

DocSet evaluate(const QueryNode& q, const PostingsIndex& idx, const Corpus& c,
                const EvalOptions& opts) {
  if (idx.corpus_size() != c.size())
    throw std::invalid_argument("index was built from a different corpus");
  return Evaluator(idx, c, query_universe(q, c, opts)).eval(q);
}

}  // namespace patcom::search
