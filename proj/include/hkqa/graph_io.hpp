#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hkqa/graph_store.hpp"

namespace hkqa {

class VersionError : public FormatError {
 public:
  VersionError(std::uint32_t found, std::uint32_t expected)
      : FormatError("unsupported image version " + std::to_string(found) + " (expected " + std::to_string(expected) + ")"),
        found_(found) {}
  std::uint32_t found() const noexcept { return found_; }

 private:
  std::uint32_t found_;
};

namespace io {

inline constexpr std::array<char, 8> kGraphMagic = {'H', 'K', 'Q', 'A', 'G', 'R', 'P', 'H'};
inline constexpr std::uint32_t kGraphVersion = 1;

/// Little-endian primitive writer.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void opt(const std::optional<std::string>& s) {
    u8(s.has_value());
    if (s) str(*s);
  }
  void bytes(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
  bool ok() const { return static_cast<bool>(out_); }

 private:
  std::ostream& out_;
};

/// Little-endian primitive reader; any short read is a truncation error.
class Reader {
 public:
  Reader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

  std::uint8_t u8() {
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) throw FormatError("truncated " + what_);
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string str() {
    std::uint32_t n = u32();
    std::string s(n, '\0');
    if (n && !in_.read(s.data(), n)) throw FormatError("truncated " + what_);
    return s;
  }
  std::optional<std::string> opt() {
    if (u8()) return str();
    return std::nullopt;
  }
  void bytes(char* p, std::size_t n) {
    if (!in_.read(p, static_cast<std::streamsize>(n))) throw FormatError("truncated " + what_);
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }
  // Guards against absurd counts from corrupt input before allocating.
  std::size_t count(std::uint64_t limit = (1ull << 32)) {
    auto n = u64();
    if (n > limit) throw FormatError("corrupt " + what_ + ": implausible element count");
    return static_cast<std::size_t>(n);
  }

 private:
  std::istream& in_;
  std::string what_;
};

inline void put_id(Writer& w, const VertexId& id) {
  w.u8(static_cast<std::uint8_t>(id.kind));
  w.str(id.local_id);
}

inline VertexId get_id(Reader& r) {
  auto k = r.u8();
  if (k > 4) throw FormatError("corrupt graph image: bad vertex kind");
  return {static_cast<VertexKind>(k), r.str()};
}

inline void put_span(Writer& w, const TokenSpan& s) {
  w.u32(s.begin);
  w.u32(s.end);
}
inline TokenSpan get_span(Reader& r) {
  TokenSpan s;
  s.begin = r.u32();
  s.end = r.u32();
  return s;
}

template <class T, class F>
void put_vec(Writer& w, const std::vector<T>& v, F&& f) {
  w.u64(v.size());
  for (const auto& x : v) f(x);
}

template <class F>
auto get_vec(Reader& r, F&& f) {
  std::size_t n = r.count();
  std::vector<decltype(f())> v;
  v.reserve(std::min<std::size_t>(n, 1 << 16));
  for (std::size_t i = 0; i < n; ++i) v.push_back(f());
  return v;
}

}  // namespace io

/// Writes the versioned binary image: magic, version, per-kind vertex tables, edge list.
inline void save_graph(const PropertyGraph& g, std::ostream& out) {
  io::Writer w(out);
  w.bytes(io::kGraphMagic.data(), io::kGraphMagic.size());
  w.u32(io::kGraphVersion);
  auto id = [&](const VertexId& v) { io::put_id(w, v); };
  auto span = [&](const TokenSpan& s) { io::put_span(w, s); };
  auto str = [&](const std::string& s) { w.str(s); };

  io::put_vec(w, g.documents(), [&](const DocumentVertex& d) {
    id(d.id);
    w.str(d.title);
    w.opt(d.url);
    w.opt(d.timestamp);
    io::put_vec(w, d.sentence_ids, id);
  });
  io::put_vec(w, g.sentences(), [&](const SentenceVertex& s) {
    id(s.id);
    w.str(s.text);
    io::put_vec(w, s.tokens, str);
    io::put_vec(w, s.clause_ids, id);
    io::put_vec(w, s.mention_ids, id);
    id(s.parent_doc);
  });
  io::put_vec(w, g.clauses(), [&](const ClauseVertex& c) {
    id(c.id);
    span(c.subject);
    span(c.predicate);
    io::put_vec(w, c.objects, span);
    io::put_vec(w, c.adverbials, span);
    id(c.parent_sent);
  });
  io::put_vec(w, g.mentions(), [&](const MentionVertex& m) {
    id(m.id);
    w.str(m.surface);
    span(m.span);
    id(m.sentence);
    w.u8(static_cast<std::uint8_t>(m.ner_type));
    w.opt(m.pos);
    w.opt(m.lemma);
    w.u8(m.entity_id.has_value());
    if (m.entity_id) id(*m.entity_id);
  });
  io::put_vec(w, g.entities(), [&](const EntityVertex& e) {
    id(e.id);
    w.str(e.kb_id);
    w.str(e.label);
  });
  io::put_vec(w, g.edges(), [&](const GraphEdge& e) {
    id(e.src);
    id(e.dst);
    w.u8(static_cast<std::uint8_t>(e.kind));
  });
  w.bytes(io::kGraphMagic.data(), 4);
  if (!w.ok()) throw Error("failed writing graph image");
}

inline PropertyGraph load_graph(std::istream& in) {
  io::Reader r(in, "graph image");
  std::array<char, 8> magic{};
  try {
    r.bytes(magic.data(), magic.size());
  } catch (const FormatError&) {
    throw FormatError("empty or truncated graph image");
  }
  if (magic != io::kGraphMagic) throw FormatError("not a graph image (bad magic)");
  auto version = r.u32();
  if (version != io::kGraphVersion) throw VersionError(version, io::kGraphVersion);

  auto id = [&] { return io::get_id(r); };
  auto span = [&] { return io::get_span(r); };
  auto str = [&] { return r.str(); };

  PropertyGraph::Stores st;
  st.documents = io::get_vec(r, [&] {
    DocumentVertex d;
    d.id = id();
    d.title = r.str();
    d.url = r.opt();
    d.timestamp = r.opt();
    d.sentence_ids = io::get_vec(r, id);
    return d;
  });
  st.sentences = io::get_vec(r, [&] {
    SentenceVertex s;
    s.id = id();
    s.text = r.str();
    s.tokens = io::get_vec(r, str);
    s.clause_ids = io::get_vec(r, id);
    s.mention_ids = io::get_vec(r, id);
    s.parent_doc = id();
    return s;
  });
  st.clauses = io::get_vec(r, [&] {
    ClauseVertex c;
    c.id = id();
    c.subject = span();
    c.predicate = span();
    c.objects = io::get_vec(r, span);
    c.adverbials = io::get_vec(r, span);
    c.parent_sent = id();
    return c;
  });
  st.mentions = io::get_vec(r, [&] {
    MentionVertex m;
    m.id = id();
    m.surface = r.str();
    m.span = span();
    m.sentence = id();
    auto ner = r.u8();
    if (ner > 4) throw FormatError("corrupt graph image: bad ner type");
    m.ner_type = static_cast<NerType>(ner);
    m.pos = r.opt();
    m.lemma = r.opt();
    if (r.u8()) m.entity_id = id();
    return m;
  });
  st.entities = io::get_vec(r, [&] {
    EntityVertex e;
    e.id = id();
    e.kb_id = r.str();
    e.label = r.str();
    return e;
  });
  auto edges = io::get_vec(r, [&] {
    GraphEdge e;
    e.src = id();
    e.dst = id();
    auto k = r.u8();
    if (k > 2) throw FormatError("corrupt graph image: bad edge kind");
    e.kind = static_cast<EdgeKind>(k);
    return e;
  });
  std::array<char, 4> trailer{};
  r.bytes(trailer.data(), trailer.size());
  if (std::memcmp(trailer.data(), io::kGraphMagic.data(), 4) != 0) throw FormatError("corrupt graph image trailer");
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("corrupt graph image: trailing data");

  for (const auto& e : edges) {
    if (e.kind == EdgeKind::Coref && e.src.local_id < e.dst.local_id) {
      st.coref_pairs.emplace(e.src.local_id, e.dst.local_id);
    }
  }
  PropertyGraph g;
  try {
    g = PropertyGraph::assemble(std::move(st));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("corrupt graph image: ") + e.what());
  }
  if (g.edges() != edges) throw FormatError("corrupt graph image: edge list does not match vertex tables");
  return g;
}

inline void save_graph(const PropertyGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  save_graph(g, out);
}

inline PropertyGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open graph image " + path.string());
  return load_graph(in);
}

/// Order-independent textual dump; equal strings mean isomorphic graphs.
inline std::string canonical_text(const PropertyGraph& g) {
  std::ostringstream o;
  auto span = [&](const TokenSpan& s) { o << '[' << s.begin << ',' << s.end << ')'; };
  for (const auto& d : g.documents()) {
    o << d.id.str() << '\t' << d.title << '\t' << d.url.value_or("-") << '\t' << d.timestamp.value_or("-");
    for (const auto& s : d.sentence_ids) o << ' ' << s.str();
    o << '\n';
  }
  for (const auto& s : g.sentences()) {
    o << s.id.str() << '\t' << s.parent_doc.str() << '\t' << text::join(s.tokens, "|");
    for (const auto& c : s.clause_ids) o << ' ' << c.str();
    for (const auto& m : s.mention_ids) o << ' ' << m.str();
    o << '\n';
  }
  for (const auto& c : g.clauses()) {
    o << c.id.str() << '\t' << c.parent_sent.str() << "\tS";
    span(c.subject);
    o << " P";
    span(c.predicate);
    for (const auto& x : c.objects) o << " O", span(x);
    for (const auto& x : c.adverbials) o << " A", span(x);
    o << '\n';
  }
  for (const auto& m : g.mentions()) {
    o << m.id.str() << '\t' << m.surface << '\t';
    span(m.span);
    o << '\t' << m.sentence.str() << '\t' << ner_name(m.ner_type) << '\t' << m.pos.value_or("-") << '\t'
      << m.lemma.value_or("-") << '\t' << (m.entity_id ? m.entity_id->str() : "-") << '\n';
  }
  for (const auto& e : g.entities()) o << e.id.str() << '\t' << e.label << '\n';
  for (const auto& e : g.edges()) {
    o << "edge " << static_cast<int>(e.kind) << ' ' << e.src.str() << ' ' << e.dst.str() << '\n';
  }
  return o.str();
}

}  // namespace hkqa
