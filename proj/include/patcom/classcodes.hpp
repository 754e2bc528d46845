#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace patcom::classcodes {

/// Raised for any symbol that does not follow the IPC or USPC grammar.
/// `position` is a byte offset into the original input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& reason);
  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

/// Hierarchy levels shared by both systems. USPC only uses Class and Subclass.
enum class Depth { Section, Class, Subclass, MainGroup, Subgroup };

std::string_view to_string(Depth d);
std::optional<Depth> depth_from_string(std::string_view s);

/// An IPC symbol such as "A61P25/16", populated down to some depth.
///
/// Fields form a prefix chain: a subgroup implies a main group, which implies
/// a subclass, which implies a class. The subgroup keeps the digits as written
/// so "1/00" and "1/0" are distinct symbols.
class IpcSymbol {
 public:
  IpcSymbol() = default;

  /// Builds a symbol from its parts; throws std::invalid_argument when the
  /// parts violate the prefix chain or the per-field alphabets.
  static IpcSymbol make(char section, std::string class_digits = {},
                        char subclass = '\0', unsigned main_group = 0,
                        std::string subgroup = {});

  char section() const noexcept { return section_; }
  const std::string& class_digits() const noexcept { return class_; }
  char subclass() const noexcept { return subclass_; }
  unsigned main_group() const noexcept { return main_group_; }
  const std::string& subgroup() const noexcept { return subgroup_; }

  bool has_class() const noexcept { return !class_.empty(); }
  bool has_subclass() const noexcept { return subclass_ != '\0'; }
  bool has_main_group() const noexcept { return main_group_ != 0; }
  bool has_subgroup() const noexcept { return !subgroup_.empty(); }

  Depth depth() const noexcept;

  friend bool operator==(const IpcSymbol&, const IpcSymbol&) = default;

 private:
  char section_ = 'A';
  std::string class_;
  char subclass_ = '\0';
  unsigned main_group_ = 0;
  std::string subgroup_;
};

/// A USPC symbol: class number with an optional subclass ("417/161.1A").
/// Class numbers are stored without leading zeros; subclass letters upper case.
class UspcSymbol {
 public:
  UspcSymbol() = default;
  static UspcSymbol make(std::string class_num, std::string subclass = {});

  const std::string& class_num() const noexcept { return class_; }
  const std::string& subclass() const noexcept { return subclass_; }
  bool has_subclass() const noexcept { return !subclass_.empty(); }
  Depth depth() const noexcept {
    return has_subclass() ? Depth::Subclass : Depth::Class;
  }

  friend bool operator==(const UspcSymbol&, const UspcSymbol&) = default;

 private:
  std::string class_ = "1";
  std::string subclass_;
};

IpcSymbol parse_ipc(std::string_view text);
UspcSymbol parse_uspc(std::string_view text);

std::string format(const IpcSymbol& sym);
std::string format(const UspcSymbol& sym);

/// Prefix rule: every populated field of `ancestor` matches `descendant`.
bool ipc_contains(const IpcSymbol& ancestor, const IpcSymbol& descendant);
/// Class-only ancestors contain their whole class; otherwise exact match.
bool uspc_contains(const UspcSymbol& ancestor, const UspcSymbol& descendant);

/// Cuts a symbol back to `d`. Empty when the symbol is shallower than `d`.
std::optional<IpcSymbol> truncate(const IpcSymbol& sym, Depth d);
std::optional<UspcSymbol> truncate(const UspcSymbol& sym, Depth d);

enum class System { Ipc, Uspc };

std::string_view to_string(System s);
std::optional<System> system_from_string(std::string_view s);

/// Either kind of symbol; ordered by canonical string for stable reports.
using ClassSymbol = std::variant<IpcSymbol, UspcSymbol>;

std::string format(const ClassSymbol& sym);
System system_of(const ClassSymbol& sym);
ClassSymbol parse(System system, std::string_view text);
bool contains(const ClassSymbol& ancestor, const ClassSymbol& descendant);

/// True when `d` is a legal grouping depth for `system`.
bool valid_depth(System system, Depth d);

}  // namespace patcom::classcodes
