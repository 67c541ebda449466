#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace rip::cli {

// Minimal streaming JSON emitter. Keys come out in insertion order and doubles
// use 17 significant digits, so identical inputs give byte-identical reports.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view name) {
    separate();
    quoted(name);
    text_ += ": ";
    after_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    return raw(std::isfinite(v) ? fmt::format("{:.17g}", v) : std::string("null"));
  }
  JsonWriter& value(std::int64_t v) { return raw(fmt::format("{}", v)); }
  JsonWriter& value(std::size_t v) { return raw(fmt::format("{}", v)); }
  JsonWriter& value(int v) { return raw(fmt::format("{}", v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(std::string_view s) {
    separate();
    quoted(s);
    return *this;
  }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null() { return raw("null"); }

  template <typename T>
  JsonWriter& value(const std::optional<T>& v) {
    return v ? value(*v) : null();
  }

  template <typename T>
  JsonWriter& array(const std::vector<T>& values) {
    begin_array();
    for (const auto& v : values) value(v);
    return end_array();
  }

  template <typename T>
  JsonWriter& field(std::string_view name, const T& v) {
    key(name);
    return value(v);
  }

  const std::string& str() const { return text_; }

 private:
  JsonWriter& open(char c) {
    separate();
    text_ += c;
    first_.push_back(true);
    return *this;
  }

  JsonWriter& close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    text_ += c;
    return *this;
  }

  JsonWriter& raw(std::string_view s) {
    separate();
    text_ += s;
    return *this;
  }

  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (first_.empty()) return;
    if (!first_.back()) text_ += ',';
    first_.back() = false;
    newline();
  }

  void newline() {
    text_ += '\n';
    text_.append(2 * first_.size(), ' ');
  }

  void quoted(std::string_view s) {
    text_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': text_ += "\\\""; break;
        case '\\': text_ += "\\\\"; break;
        case '\n': text_ += "\\n"; break;
        case '\t': text_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            text_ += fmt::format("\\u{:04x}", static_cast<int>(c));
          } else {
            text_ += c;
          }
      }
    }
    text_ += '"';
  }

  std::string text_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

}  // namespace rip::cli
