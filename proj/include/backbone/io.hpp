#pragma once

#include <string>
#include <vector>

#include "backbone/deploy.hpp"
#include "backbone/environment.hpp"

namespace backbone {

/// Shortest-round-trip decimal formatting; shared by every text emitter so
/// identical doubles always print identical bytes.
std::string format_number(double v);

/// One value of the key-value text format: a number or a nested array.
struct TextValue {
  bool is_number = false;
  double number = 0.0;
  std::vector<TextValue> items;

  double as_number(const std::string& what) const;
  Vec2 as_point(const std::string& what) const;
  std::vector<Vec2> as_point_list(const std::string& what) const;
};

struct TextField {
  std::string key;
  TextValue value;
};

/// Parses `key: value` lines where value is a number or a (possibly
/// multi-line) bracketed array. `#` starts a comment. Throws ParseError.
std::vector<TextField> parse_kv_text(const std::string& text, const std::string& origin);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Environment parse_environment_text(const std::string& text, const std::string& origin);

BackboneConfig parse_backbone_text(const std::string& text, const std::string& origin);
BackboneConfig load_backbone(const std::string& path);
std::string backbone_to_text(const BackboneConfig& cfg);

/// Goal list: one `x y` (or `x,y`) pair per line, `#` comments allowed.
std::vector<Vec2> parse_goal_list(const std::string& text, const std::string& origin);
std::vector<Vec2> load_goal_list(const std::string& path);

}  // namespace backbone
