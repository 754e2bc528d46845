#include "patcom/classcodes.hpp"

#include <array>
#include <cctype>
#include <utility>
#include <vector>

#include <fmt/format.h>

namespace patcom::classcodes {

ParseError::ParseError(std::size_t position, const std::string& reason)
    : std::runtime_error(fmt::format("at position {}: {}", position, reason)),
      position_(position),
      reason_(reason) {}

namespace {

constexpr std::array<std::string_view, 5> kDepthNames = {
    "section", "class", "subclass", "main_group", "subgroup"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
char upper(char c) {
  return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}
bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// Non-whitespace characters paired with their offset in the source text.
struct Cursor {
  std::vector<std::pair<char, std::size_t>> chars;
  std::size_t at = 0;
  std::size_t source_size = 0;

  explicit Cursor(std::string_view text) : source_size(text.size()) {
    for (std::size_t i = 0; i < text.size(); ++i)
      if (!is_space(text[i])) chars.emplace_back(text[i], i);
  }
  bool done() const { return at >= chars.size(); }
  char peek() const { return chars[at].first; }
  std::size_t pos() const {
    return done() ? source_size : chars[at].second;
  }
};

// Digit runs must not span whitespace, so IPC parsing walks the raw text.
struct RawCursor {
  std::string_view text;
  std::size_t at = 0;

  void skip_ws() {
    while (at < text.size() && is_space(text[at])) ++at;
  }
  bool done() const { return at >= text.size(); }
  char peek() const { return text[at]; }
  std::string_view digits() {
    std::size_t start = at;
    while (at < text.size() && is_digit(text[at])) ++at;
    return text.substr(start, at - start);
  }
};

std::string strip_leading_zeros(std::string_view digits) {
  std::size_t i = 0;
  while (i + 1 < digits.size() && digits[i] == '0') ++i;
  return std::string(digits.substr(i));
}

bool valid_uspc_subclass(std::string_view s) {
  std::size_t i = 0;
  auto digit_run = [&] {
    std::size_t start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    return i - start;
  };
  if (digit_run() == 0) return false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    if (digit_run() == 0) return false;
  }
  while (i < s.size() && is_alpha(s[i])) ++i;
  return i == s.size();
}

}  // namespace

std::string_view to_string(Depth d) {
  return kDepthNames[static_cast<std::size_t>(d)];
}

std::optional<Depth> depth_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kDepthNames.size(); ++i)
    if (kDepthNames[i] == s) return static_cast<Depth>(i);
  if (s == "group" || s == "maingroup") return Depth::MainGroup;
  return std::nullopt;
}

std::string_view to_string(System s) {
  return s == System::Ipc ? "ipc" : "upc";
}

std::optional<System> system_from_string(std::string_view s) {
  std::string lower;
  for (char c : s)
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "ipc") return System::Ipc;
  if (lower == "upc" || lower == "uspc") return System::Uspc;
  return std::nullopt;
}

IpcSymbol IpcSymbol::make(char section, std::string class_digits,
                          char subclass, unsigned main_group,
                          std::string subgroup) {
  if (section < 'A' || section > 'H')
    throw std::invalid_argument("IPC section must be A-H");
  if (!class_digits.empty() &&
      (class_digits.size() != 2 || !is_digit(class_digits[0]) ||
       !is_digit(class_digits[1])))
    throw std::invalid_argument("IPC class must be two digits");
  if (subclass != '\0' && (subclass < 'A' || subclass > 'Z'))
    throw std::invalid_argument("IPC subclass must be an upper-case letter");
  for (char c : subgroup)
    if (!is_digit(c)) throw std::invalid_argument("IPC subgroup must be digits");
  const bool chain_ok = (subclass == '\0' || !class_digits.empty()) &&
                        (main_group == 0 || subclass != '\0') &&
                        (subgroup.empty() || main_group != 0);
  if (!chain_ok)
    throw std::invalid_argument("IPC fields must form a prefix chain");

  IpcSymbol s;
  s.section_ = section;
  s.class_ = std::move(class_digits);
  s.subclass_ = subclass;
  s.main_group_ = main_group;
  s.subgroup_ = std::move(subgroup);
  return s;
}

Depth IpcSymbol::depth() const noexcept {
  if (has_subgroup()) return Depth::Subgroup;
  if (has_main_group()) return Depth::MainGroup;
  if (has_subclass()) return Depth::Subclass;
  if (has_class()) return Depth::Class;
  return Depth::Section;
}

UspcSymbol UspcSymbol::make(std::string class_num, std::string subclass) {
  if (class_num.empty() || class_num.size() > 3)
    throw std::invalid_argument("USPC class must be 1-3 digits");
  for (char c : class_num)
    if (!is_digit(c)) throw std::invalid_argument("USPC class must be digits");
  class_num = strip_leading_zeros(class_num);
  if (class_num == "0") throw std::invalid_argument("USPC class cannot be 0");
  for (char& c : subclass) c = upper(c);
  if (!subclass.empty() && !valid_uspc_subclass(subclass))
    throw std::invalid_argument("malformed USPC subclass");
  UspcSymbol s;
  s.class_ = std::move(class_num);
  s.subclass_ = std::move(subclass);
  return s;
}

IpcSymbol parse_ipc(std::string_view text) {
  RawCursor cur{text};
  cur.skip_ws();
  if (cur.done()) throw ParseError(cur.at, "empty IPC symbol");

  const char section = upper(cur.peek());
  if (section < 'A' || section > 'H')
    throw ParseError(cur.at, "illegal section letter (expected A-H)");
  ++cur.at;
  cur.skip_ws();
  if (cur.done()) return IpcSymbol::make(section);

  std::size_t class_pos = cur.at;
  std::string_view class_digits = cur.digits();
  if (class_digits.size() != 2)
    throw ParseError(class_pos, "class must be exactly two digits");
  cur.skip_ws();
  if (cur.done()) return IpcSymbol::make(section, std::string(class_digits));

  const char subclass = upper(cur.peek());
  if (subclass < 'A' || subclass > 'Z')
    throw ParseError(cur.at, "expected subclass letter");
  ++cur.at;
  cur.skip_ws();
  if (cur.done())
    return IpcSymbol::make(section, std::string(class_digits), subclass);

  std::size_t group_pos = cur.at;
  std::string_view group = cur.digits();
  if (group.empty()) throw ParseError(group_pos, "expected main group number");
  if (group.size() > 4) throw ParseError(group_pos, "main group too long");
  const unsigned main_group = static_cast<unsigned>(std::stoul(std::string(group)));
  if (main_group == 0) throw ParseError(group_pos, "main group must be positive");
  cur.skip_ws();
  if (cur.done())
    return IpcSymbol::make(section, std::string(class_digits), subclass,
                           main_group);

  if (cur.peek() != '/') throw ParseError(cur.at, "expected '/'");
  ++cur.at;
  cur.skip_ws();
  std::size_t sub_pos = cur.at;
  std::string_view subgroup = cur.digits();
  if (subgroup.empty()) throw ParseError(sub_pos, "missing group after '/'");
  if (subgroup.size() > 6) throw ParseError(sub_pos, "subgroup too long");
  cur.skip_ws();
  if (!cur.done()) throw ParseError(cur.at, "unexpected trailing characters");
  return IpcSymbol::make(section, std::string(class_digits), subclass,
                         main_group, std::string(subgroup));
}

UspcSymbol parse_uspc(std::string_view text) {
  Cursor cur(text);
  if (cur.done()) throw ParseError(0, "empty USPC symbol");

  std::string class_num;
  std::size_t class_pos = cur.pos();
  while (!cur.done() && cur.peek() != '/') {
    if (!is_digit(cur.peek()))
      throw ParseError(cur.pos(), "class number must be digits");
    class_num.push_back(cur.peek());
    ++cur.at;
  }
  if (class_num.empty()) throw ParseError(class_pos, "empty class number");
  if (class_num.size() > 3)
    throw ParseError(class_pos, "class number longer than 3 digits");
  if (strip_leading_zeros(class_num) == "0")
    throw ParseError(class_pos, "class number cannot be zero");
  if (cur.done()) return UspcSymbol::make(class_num);

  ++cur.at;  // '/'
  std::size_t sub_pos = cur.pos();
  std::string subclass;
  while (!cur.done()) {
    if (cur.peek() == '/') throw ParseError(cur.pos(), "multiple '/'");
    subclass.push_back(upper(cur.peek()));
    ++cur.at;
  }
  if (!valid_uspc_subclass(subclass))
    throw ParseError(sub_pos, "malformed subclass");
  return UspcSymbol::make(class_num, subclass);
}

std::string format(const IpcSymbol& sym) {
  std::string out(1, sym.section());
  if (!sym.has_class()) return out;
  out += sym.class_digits();
  if (!sym.has_subclass()) return out;
  out.push_back(sym.subclass());
  if (!sym.has_main_group()) return out;
  out += std::to_string(sym.main_group());
  if (!sym.has_subgroup()) return out;
  out.push_back('/');
  out += sym.subgroup();
  return out;
}

std::string format(const UspcSymbol& sym) {
  if (!sym.has_subclass()) return sym.class_num();
  return sym.class_num() + "/" + sym.subclass();
}

bool ipc_contains(const IpcSymbol& ancestor, const IpcSymbol& descendant) {
  if (ancestor.section() != descendant.section()) return false;
  if (ancestor.has_class() && ancestor.class_digits() != descendant.class_digits())
    return false;
  if (ancestor.has_subclass() && ancestor.subclass() != descendant.subclass())
    return false;
  if (ancestor.has_main_group() &&
      ancestor.main_group() != descendant.main_group())
    return false;
  if (ancestor.has_subgroup() && ancestor.subgroup() != descendant.subgroup())
    return false;
  return true;
}

bool uspc_contains(const UspcSymbol& ancestor, const UspcSymbol& descendant) {
  if (ancestor.class_num() != descendant.class_num()) return false;
  return !ancestor.has_subclass() || ancestor.subclass() == descendant.subclass();
}

std::optional<IpcSymbol> truncate(const IpcSymbol& sym, Depth d) {
  if (sym.depth() < d) return std::nullopt;
  const char subclass = d >= Depth::Subclass ? sym.subclass() : '\0';
  return IpcSymbol::make(sym.section(),
                         d >= Depth::Class ? sym.class_digits() : std::string{},
                         subclass,
                         d >= Depth::MainGroup ? sym.main_group() : 0u,
                         d >= Depth::Subgroup ? sym.subgroup() : std::string{});
}

std::optional<UspcSymbol> truncate(const UspcSymbol& sym, Depth d) {
  if (d == Depth::Class) return UspcSymbol::make(sym.class_num());
  if (d == Depth::Subclass && sym.has_subclass()) return sym;
  return std::nullopt;
}

std::string format(const ClassSymbol& sym) {
  return std::visit([](const auto& s) { return format(s); }, sym);
}

System system_of(const ClassSymbol& sym) {
  return std::holds_alternative<IpcSymbol>(sym) ? System::Ipc : System::Uspc;
}

ClassSymbol parse(System system, std::string_view text) {
  if (system == System::Ipc) return parse_ipc(text);
  return parse_uspc(text);
}

bool contains(const ClassSymbol& ancestor, const ClassSymbol& descendant) {
  if (ancestor.index() != descendant.index()) return false;
  if (const auto* a = std::get_if<IpcSymbol>(&ancestor))
    return ipc_contains(*a, std::get<IpcSymbol>(descendant));
  return uspc_contains(std::get<UspcSymbol>(ancestor),
                       std::get<UspcSymbol>(descendant));
}

bool valid_depth(System system, Depth d) {
  if (system == System::Ipc) return true;
  return d == Depth::Class || d == Depth::Subclass;
}

}  // namespace patcom::classcodes
