#include "backbone/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "backbone/errors.hpp"

namespace backbone {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double TextValue::as_number(const std::string& what) const {
  if (!is_number) throw ParseError(what + ": expected a number");
  return number;
}

Vec2 TextValue::as_point(const std::string& what) const {
  if (is_number || items.size() != 2)
    throw ParseError(what + ": expected a point [x, y]");
  return {items[0].as_number(what), items[1].as_number(what)};
}

std::vector<Vec2> TextValue::as_point_list(const std::string& what) const {
  if (is_number) throw ParseError(what + ": expected a list of points");
  std::vector<Vec2> out;
  out.reserve(items.size());
  for (const TextValue& item : items) out.push_back(item.as_point(what));
  return out;
}

namespace {

struct Lexer {
  const std::string& text;
  const std::string& origin;
  std::size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
  }

  void skip_space(bool stop_at_newline) {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
        continue;
      }
      if (c == '\n') {
        if (stop_at_newline) return;
        ++line;
        ++pos;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      return;
    }
  }

  bool eof() {
    skip_space(false);
    return pos >= text.size();
  }

  char peek() const { return text[pos]; }

  std::string read_key() {
    std::string key;
    while (pos < text.size()) {
      const char c = text[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        key += c;
        ++pos;
      } else {
        break;
      }
    }
    if (key.empty()) fail(std::string("expected a key, found '") + text[pos] + "'");
    return key;
  }

  double read_number() {
    const char* start = text.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) fail("expected a number");
    pos += static_cast<std::size_t>(end - start);
    return v;
  }

  TextValue read_value() {
    skip_space(false);
    if (pos >= text.size()) fail("expected a value");
    if (peek() == '[') {
      ++pos;
      TextValue arr;
      skip_space(false);
      if (pos < text.size() && peek() == ']') {
        ++pos;
        return arr;
      }
      while (true) {
        arr.items.push_back(read_value());
        skip_space(false);
        if (pos >= text.size()) fail("unterminated array");
        if (peek() == ',') {
          ++pos;
          continue;
        }
        if (peek() == ']') {
          ++pos;
          return arr;
        }
        fail(std::string("expected ',' or ']' in array, found '") + peek() + "'");
      }
    }
    TextValue num;
    num.is_number = true;
    num.number = read_number();
    return num;
  }
};

}  // namespace

std::vector<TextField> parse_kv_text(const std::string& text, const std::string& origin) {
  Lexer lex{text, origin};
  std::vector<TextField> fields;
  while (!lex.eof()) {
    TextField field;
    field.key = lex.read_key();
    lex.skip_space(true);
    if (lex.pos >= text.size() || lex.peek() != ':') lex.fail("expected ':' after key '" + field.key + "'");
    ++lex.pos;
    field.value = lex.read_value();
    for (const TextField& seen : fields) {
      if (seen.key == field.key) lex.fail("duplicate key '" + field.key + "'");
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

namespace {

const TextValue* find_field(const std::vector<TextField>& fields, const std::string& key) {
  for (const TextField& f : fields)
    if (f.key == key) return &f.value;
  return nullptr;
}

const TextValue& require_field(const std::vector<TextField>& fields, const std::string& key,
                               const std::string& origin) {
  const TextValue* v = find_field(fields, key);
  if (!v) throw ParseError(origin + ": missing field '" + key + "'");
  return *v;
}

}  // namespace

Environment parse_environment_text(const std::string& text, const std::string& origin) {
  const auto fields = parse_kv_text(text, origin);
  for (const TextField& f : fields) {
    if (f.key != "bounds" && f.key != "obstacles" && f.key != "base")
      throw ParseError(origin + ": unknown field '" + f.key + "'");
  }
  const TextValue& bounds = require_field(fields, "bounds", origin);
  if (bounds.is_number || bounds.items.size() != 4)
    throw ParseError(origin + ": bounds must be [xmin, ymin, xmax, ymax]");

  Environment env;
  env.bounds.min = {bounds.items[0].as_number("bounds"), bounds.items[1].as_number("bounds")};
  env.bounds.max = {bounds.items[2].as_number("bounds"), bounds.items[3].as_number("bounds")};
  env.base_station = require_field(fields, "base", origin).as_point("base");
  if (const TextValue* obstacles = find_field(fields, "obstacles")) {
    if (obstacles->is_number) throw ParseError(origin + ": obstacles must be an array");
    for (std::size_t i = 0; i < obstacles->items.size(); ++i) {
      Polygon poly;
      poly.pts = obstacles->items[i].as_point_list("obstacle " + std::to_string(i));
      // Vertex order is normalized to CCW; winding is presentation, not data.
      if (poly.size() >= 3 && !poly.is_ccw()) std::reverse(poly.pts.begin(), poly.pts.end());
      env.obstacles.push_back(std::move(poly));
    }
  }
  validate_environment(env);
  return env;
}

Environment load_environment(const std::string& path) {
  return parse_environment_text(read_text_file(path), path);
}

std::string environment_to_text(const Environment& env) {
  std::ostringstream out;
  out << "bounds: [" << format_number(env.bounds.min.x) << ", " << format_number(env.bounds.min.y)
      << ", " << format_number(env.bounds.max.x) << ", " << format_number(env.bounds.max.y)
      << "]\n";
  out << "base: [" << format_number(env.base_station.x) << ", "
      << format_number(env.base_station.y) << "]\n";
  out << "obstacles: [";
  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "  [";
    const Polygon& poly = env.obstacles[i];
    for (std::size_t j = 0; j < poly.size(); ++j) {
      if (j) out << ", ";
      out << "[" << format_number(poly[j].x) << ", " << format_number(poly[j].y) << "]";
    }
    out << "]";
  }
  out << (env.obstacles.empty() ? "]\n" : "\n]\n");
  return out.str();
}

BackboneConfig parse_backbone_text(const std::string& text, const std::string& origin) {
  const auto fields = parse_kv_text(text, origin);
  for (const TextField& f : fields) {
    if (f.key != "base" && f.key != "relays" && f.key != "leader" && f.key != "used")
      throw ParseError(origin + ": unknown field '" + f.key + "'");
  }
  BackboneConfig cfg;
  cfg.base = require_field(fields, "base", origin).as_point("base");
  cfg.relay_positions = require_field(fields, "relays", origin).as_point_list("relays");
  cfg.leader_position = require_field(fields, "leader", origin).as_point("leader");
  cfg.used_count = static_cast<int>(require_field(fields, "used", origin).as_number("used"));
  if (cfg.used_count < 0 || cfg.used_count > static_cast<int>(cfg.relay_positions.size()))
    throw ParseError(origin + ": used count out of range");
  return cfg;
}

BackboneConfig load_backbone(const std::string& path) {
  return parse_backbone_text(read_text_file(path), path);
}

std::string backbone_to_text(const BackboneConfig& cfg) {
  std::ostringstream out;
  out << "base: [" << format_number(cfg.base.x) << ", " << format_number(cfg.base.y) << "]\n";
  out << "relays: [";
  for (std::size_t i = 0; i < cfg.relay_positions.size(); ++i) {
    if (i) out << ", ";
    out << "[" << format_number(cfg.relay_positions[i].x) << ", "
        << format_number(cfg.relay_positions[i].y) << "]";
  }
  out << "]\n";
  out << "leader: [" << format_number(cfg.leader_position.x) << ", "
      << format_number(cfg.leader_position.y) << "]\n";
  out << "used: " << cfg.used_count << "\n";
  return out.str();
}

std::vector<Vec2> parse_goal_list(const std::string& text, const std::string& origin) {
  std::vector<Vec2> goals;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    ls.clear();
    ls.seekg(0);
    double x, y;
    std::string extra;
    if (!(ls >> x >> y) || (ls >> extra))
      throw ParseError(origin + ":" + std::to_string(line_no) + ": expected 'x y' per line");
    goals.emplace_back(x, y);
  }
  return goals;
}

std::vector<Vec2> load_goal_list(const std::string& path) {
  return parse_goal_list(read_text_file(path), path);
}

}  // namespace backbone
