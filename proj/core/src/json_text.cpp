#include "hypdiam/json_text.hpp"

#include <cmath>

#include <json.hpp>

#include "hypdiam/harness.hpp"

namespace hypdiam {

void JsonText::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.back()) {
    out_ += ',';
  }
  first_.back() = false;
}

JsonText& JsonText::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonText& JsonText::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonText& JsonText::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonText& JsonText::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonText& JsonText::key(std::string_view k) {
  separate();
  out_ += nlohmann::json(std::string(k)).dump();
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonText& JsonText::value(double x) {
  if (!std::isfinite(x)) {
    return value(std::string_view(format_number(x)));
  }
  separate();
  out_ += format_number(x);
  return *this;
}

JsonText& JsonText::value(std::int64_t x) {
  separate();
  out_ += std::to_string(x);
  return *this;
}

JsonText& JsonText::value(std::uint64_t x) {
  separate();
  out_ += std::to_string(x);
  return *this;
}

JsonText& JsonText::value(bool b) {
  separate();
  out_ += b ? "true" : "false";
  return *this;
}

JsonText& JsonText::value(std::string_view s) {
  separate();
  out_ += nlohmann::json(std::string(s)).dump();
  return *this;
}

JsonText& JsonText::raw(std::string_view json) {
  separate();
  out_ += json;
  return *this;
}

}  // namespace hypdiam
