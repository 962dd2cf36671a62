#pragma once

// Streaming JSON text with doubles at 12 significant digits. Keys keep
// insertion order.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hypdiam {

class JsonText {
 public:
  JsonText& begin_object();
  JsonText& end_object();
  JsonText& begin_array();
  JsonText& end_array();
  JsonText& key(std::string_view k);

  JsonText& value(double x);  // nan and inf become strings
  JsonText& value(int x) { return value(static_cast<std::int64_t>(x)); }
  JsonText& value(std::int64_t x);
  JsonText& value(std::uint64_t x);
  JsonText& value(bool b);
  JsonText& value(std::string_view s);
  JsonText& value(const char* s) { return value(std::string_view(s)); }
  JsonText& raw(std::string_view json);

  template <class T>
  JsonText& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_{true};
  bool after_key_ = false;
};

}  // namespace hypdiam
