#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "json.hpp"
#include "patcom/search.hpp"

namespace patcom::search {

QueryNode QueryNode::term(Field f, std::vector<std::string> tokens, bool phrase) {
  QueryNode n;
  n.kind = NodeKind::Term;
  n.field = f;
  n.tokens = std::move(tokens);
  n.phrase = phrase;
  return n;
}

QueryNode QueryNode::all_of(std::vector<QueryNode> children) {
  QueryNode n;
  n.kind = NodeKind::And;
  n.children = std::move(children);
  return n;
}

QueryNode QueryNode::any_of(std::vector<QueryNode> children) {
  QueryNode n;
  n.kind = NodeKind::Or;
  n.children = std::move(children);
  return n;
}

QueryNode QueryNode::negate(QueryNode child) {
  QueryNode n;
  n.kind = NodeKind::Not;
  n.children.push_back(std::move(child));
  return n;
}

QueryNode QueryNode::near(QueryNode left, QueryNode right, unsigned window) {
  QueryNode n;
  n.kind = NodeKind::Near;
  n.window = window;
  n.children.push_back(std::move(left));
  n.children.push_back(std::move(right));
  return n;
}

QueryNode QueryNode::doc_type_filter(DocType t) {
  QueryNode n;
  n.kind = NodeKind::DocTypeFilter;
  n.doc_type = t;
  return n;
}

SyntaxError::SyntaxError(std::size_t position, std::string expected)
    : std::runtime_error(fmt::format("query syntax error at position {}: expected {}",
                                     position, expected)),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { LParen, RParen, Colon, Quoted, Word, End };

struct Lexeme {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Lexeme> lex(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":", i++});
    } else if (c == '"') {
      const std::size_t start = i++;
      const std::size_t close = text.find('"', i);
      if (close == std::string_view::npos) throw SyntaxError(start, "closing '\"'");
      out.push_back({Tok::Quoted, std::string(text.substr(i, close - i)), start});
      i = close + 1;
    } else {
      const std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')' && text[i] != ':' && text[i] != '"')
        ++i;
      out.push_back({Tok::Word, std::string(text.substr(start, i - start)), start});
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

std::optional<Field> field_name(std::string_view word) {
  const std::string u = upper(word);
  if (u == "TTL") return Field::Title;
  if (u == "ABST") return Field::Abstract;
  if (u == "CLMS") return Field::Claims;
  return std::nullopt;
}

bool is_doc_type_name(std::string_view word) { return upper(word) == "DOCUMENT_TYPE"; }

std::optional<DocType> doc_type_from_words(const std::string& words) {
  std::string lower;
  for (char c : words)
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower.find("issued") != std::string::npos) return DocType::Issued;
  if (lower.find("application") != std::string::npos) return DocType::Application;
  if (lower.find("other") != std::string::npos) return DocType::Other;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(lex(text)) {}

  QueryNode parse() {
    if (peek().kind == Tok::End) throw SyntaxError(peek().pos, "a query");
    QueryNode root = parse_or(std::nullopt);
    if (peek().kind != Tok::End) throw SyntaxError(peek().pos, "operator or end of query");
    if (root.kind == NodeKind::Not)
      throw SyntaxError(0, "a positive term alongside NOT");
    return root;
  }

 private:
  using Scope = std::optional<Field>;

  const Lexeme& peek(std::size_t ahead = 0) const {
    return lex_[std::min(at_ + ahead, lex_.size() - 1)];
  }
  const Lexeme& next() { return lex_[std::min(at_++, lex_.size() - 1)]; }

  bool keyword(const Lexeme& l, std::string_view kw) const {
    return l.kind == Tok::Word && upper(l.text) == kw;
  }
  bool is_near(const Lexeme& l) const {
    if (l.kind != Tok::Word) return false;
    const std::string u = upper(l.text);
    return u == "NEAR" || u.rfind("NEAR/", 0) == 0;
  }
  bool is_operator(const Lexeme& l) const {
    return keyword(l, "AND") || keyword(l, "OR") || keyword(l, "NOT") || is_near(l);
  }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) throw SyntaxError(peek().pos, std::string(what));
    ++at_;
  }

  QueryNode parse_or(Scope scope) {
    std::vector<QueryNode> children;
    children.push_back(parse_and(scope));
    while (keyword(peek(), "OR")) {
      next();
      children.push_back(parse_and(scope));
    }
    if (children.size() == 1) return std::move(children.front());
    return QueryNode::any_of(std::move(children));
  }

  QueryNode parse_and(Scope scope) {
    std::vector<QueryNode> children;
    children.push_back(parse_unary(scope));
    while (keyword(peek(), "AND")) {
      next();
      children.push_back(parse_unary(scope));
    }
    if (children.size() == 1) return std::move(children.front());
    return QueryNode::all_of(std::move(children));
  }

  QueryNode parse_unary(Scope scope) {
    if (keyword(peek(), "NOT")) {
      next();
      return QueryNode::negate(parse_unary(scope));
    }
    return parse_near(scope);
  }

  QueryNode parse_near(Scope scope) {
    const std::size_t left_pos = peek().pos;
    QueryNode left = parse_primary(scope);
    if (!is_near(peek())) return left;
    const Lexeme op = next();
    const unsigned window = near_window(op);
    const std::size_t right_pos = peek().pos;
    QueryNode right = parse_primary(scope);
    check_near_operand(left, left_pos);
    check_near_operand(right, right_pos);
    if (left.field != right.field)
      throw SyntaxError(right_pos, "NEAR operands in the same field");
    if (is_near(peek())) throw SyntaxError(peek().pos, "a single NEAR per operand pair");
    return QueryNode::near(std::move(left), std::move(right), window);
  }

  unsigned near_window(const Lexeme& op) const {
    const std::string u = upper(op.text);
    if (u == "NEAR") return kDefaultNearWindow;
    const std::string_view digits = std::string_view(u).substr(5);
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() ||
        k < 1 || k > kMaxNearWindow)
      throw SyntaxError(op.pos + 5,
                        fmt::format("NEAR window between 1 and {}", kMaxNearWindow));
    return k;
  }

  static void check_near_operand(const QueryNode& n, std::size_t pos) {
    if (n.kind != NodeKind::Term || (n.tokens.size() > 1 && !n.phrase))
      throw SyntaxError(pos, "a single word or quoted phrase as NEAR operand");
  }

  QueryNode parse_primary(Scope scope) {
    const Lexeme& l = peek();
    switch (l.kind) {
      case Tok::LParen: {
        next();
        QueryNode inner = parse_or(scope);
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Quoted: {
        next();
        auto tokens = tokenize(l.text);
        if (tokens.empty()) throw SyntaxError(l.pos, "a nonempty phrase");
        return QueryNode::term(scope.value_or(Field::Any), std::move(tokens), true);
      }
      case Tok::Word: {
        if (peek(1).kind == Tok::Colon) return parse_fielded(scope);
        if (is_operator(l)) throw SyntaxError(l.pos, "a search term");
        return parse_words(scope);
      }
      case Tok::RParen:
      case Tok::Colon:
      case Tok::End: break;
    }
    throw SyntaxError(l.pos, "a search term, phrase or '('");
  }

  QueryNode parse_words(Scope scope) {
    const std::size_t pos = peek().pos;
    std::vector<std::string> tokens;
    while (peek().kind == Tok::Word && !is_operator(peek()) && peek(1).kind != Tok::Colon) {
      for (auto& t : tokenize(next().text)) tokens.push_back(std::move(t));
    }
    if (tokens.empty()) throw SyntaxError(pos, "a search term");
    return QueryNode::term(scope.value_or(Field::Any), std::move(tokens), false);
  }

  QueryNode parse_fielded(Scope scope) {
    const Lexeme name = next();
    next();  // ':'
    if (is_doc_type_name(name.text)) {
      if (scope) throw SyntaxError(name.pos, "no DOCUMENT_TYPE inside a field scope");
      return parse_doc_type();
    }
    const auto field = field_name(name.text);
    if (!field) throw SyntaxError(name.pos, "a field name (TTL, ABST, CLMS, DOCUMENT_TYPE)");
    if (scope) throw SyntaxError(name.pos, "no nested field scope");
    const Lexeme& l = peek();
    if (l.kind == Tok::LParen) {
      next();
      QueryNode inner = parse_or(field);
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (l.kind == Tok::Quoted || (l.kind == Tok::Word && !is_operator(l)))
      return parse_primary(field);
    throw SyntaxError(l.pos, "a term, phrase or '(' after field name");
  }

  QueryNode parse_doc_type() {
    const std::size_t pos = peek().pos;
    std::string words;
    const bool parens = peek().kind == Tok::LParen;
    if (parens) next();
    while (peek().kind == Tok::Word && !is_operator(peek())) {
      if (!words.empty()) words.push_back(' ');
      words += next().text;
    }
    if (parens) expect(Tok::RParen, "')'");
    auto t = doc_type_from_words(words);
    if (!t) throw SyntaxError(pos, "a document type (issued, application, other)");
    return QueryNode::doc_type_filter(*t);
  }

  std::vector<Lexeme> lex_;
  std::size_t at_ = 0;
};

std::string join_tokens(const std::vector<std::string>& tokens) {
  return fmt::format("{}", fmt::join(tokens, " "));
}

std::string render(const QueryNode& q);

std::string render_child(const QueryNode& q) {
  if (q.kind == NodeKind::And || q.kind == NodeKind::Or) return "(" + render(q) + ")";
  return render(q);
}

std::string render(const QueryNode& q) {
  switch (q.kind) {
    case NodeKind::Term: {
      const std::string body =
          q.phrase ? "\"" + join_tokens(q.tokens) + "\"" : join_tokens(q.tokens);
      if (q.field == Field::Any) return body;
      return fmt::format("{}:({})", to_string(q.field), body);
    }
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<std::string> parts;
      for (const auto& c : q.children) parts.push_back(render_child(c));
      return fmt::format("{}", fmt::join(parts, q.kind == NodeKind::And ? " AND " : " OR "));
    }
    case NodeKind::Not: return "NOT " + render_child(q.children.at(0));
    case NodeKind::Near:
      return fmt::format("{} NEAR/{} {}", render(q.children.at(0)), q.window,
                         render(q.children.at(1)));
    case NodeKind::DocTypeFilter:
      return fmt::format("DOCUMENT_TYPE:({})", patcom::to_string(q.doc_type));
  }
  return {};
}

std::string_view kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Term: return "term";
    case NodeKind::And: return "and";
    case NodeKind::Or: return "or";
    case NodeKind::Not: return "not";
    case NodeKind::Near: return "near";
    case NodeKind::DocTypeFilter: return "doc_type";
  }
  return "term";
}

nlohmann::ordered_json to_json(const QueryNode& q) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(kind_name(q.kind));
  switch (q.kind) {
    case NodeKind::Term:
      j["field"] = std::string(to_string(q.field));
      j["tokens"] = q.tokens;
      j["phrase"] = q.phrase;
      break;
    case NodeKind::Near: j["window"] = q.window; [[fallthrough]];
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Not: {
      auto& children = j["children"] = nlohmann::ordered_json::array();
      for (const auto& c : q.children) children.push_back(to_json(c));
      break;
    }
    case NodeKind::DocTypeFilter: j["doc_type"] = std::string(patcom::to_string(q.doc_type)); break;
  }
  return j;
}

}  // namespace

QueryNode parse_query(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const QueryNode& q) { return render(q); }

std::string explain(const QueryNode& q) { return to_json(q).dump(2); }

}  // namespace patcom::search
