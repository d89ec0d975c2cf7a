#pragma once
// Deterministic text emission: 17-significant-digit floats, insertion-ordered
// one-line JSON, CSV with comment preamble. Hand-rolled so identical inputs
// produce byte-identical artifacts.
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace obh {

std::string fmt17(double x); // printf %.17g

std::string json_escape(const std::string& s);

struct JsonArray;

struct JsonObject {
    std::vector<std::pair<std::string, std::string>> items; // key -> rendered value

    void add(const std::string& k, double v); // non-finite -> null
    void add(const std::string& k, std::int64_t v);
    void add(const std::string& k, int v) { add(k, std::int64_t(v)); }
    void add(const std::string& k, bool v);
    void add(const std::string& k, const std::string& v);
    void add(const std::string& k, const char* v);
    void add(const std::string& k, const JsonObject& v);
    void add(const std::string& k, const JsonArray& v);
    void add_raw(const std::string& k, std::string rendered);
    std::string str() const;
};

struct JsonArray {
    std::vector<std::string> items;

    void add(double v);
    void add(const JsonObject& v);
    void add(const std::string& v);
    std::string str() const;
};

struct Csv {
    std::string text;

    void comment(const std::string& s) { text += "# " + s + "\n"; }
    template <class... Ts> void row(const Ts&... ts) {
        const char* sep = "";
        ((text += sep, text += cell(ts), sep = ","), ...);
        text += '\n';
    }

    static std::string cell(double v) { return fmt17(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::int64_t v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(const std::string& s) { return s; }
};

void write_file(const std::string& path, const std::string& content);

} // namespace obh
