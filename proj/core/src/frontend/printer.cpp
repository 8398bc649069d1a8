#include "adapt/frontend/printer.hpp"

namespace adapt::asl {

namespace {

void indent_to(std::string& out, int indent) { out.append(static_cast<std::size_t>(indent) * 2, ' '); }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

void print_block_into(std::string& out, const Block& block, int indent);

// Writes `{ ... }` starting at the current position; the caller has already
// emitted the indentation of the opening line.
void print_braced(std::string& out, const Block& block, int indent) {
  if (block.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  print_block_into(out, block, indent + 1);
  indent_to(out, indent);
  out += '}';
}

void print_stmt(std::string& out, const Stmt& stmt, int indent) {
  indent_to(out, indent);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UseStmt>) {
          out += "use " + s.resource + ';';
        } else if constexpr (std::is_same_v<T, ConsumeStmt>) {
          out += "consume " + s.resource + ' ' + std::to_string(s.amount) + ';';
        } else if constexpr (std::is_same_v<T, ReserveStmt>) {
          out += "reserve " + s.resource + ' ' + std::to_string(s.amount) + ';';
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          out += "call " + s.target_class + '.' + s.method + '(' + join(s.args) + ");";
        } else if constexpr (std::is_same_v<T, RepeatStmt>) {
          out += "repeat " + std::to_string(s.count) + ' ';
          print_braced(out, s.body, indent);
        } else if constexpr (std::is_same_v<T, ChooseStmt>) {
          out += "choose ";
          for (std::size_t i = 0; i < s.branches.size(); ++i) {
            if (i) out += " or ";
            print_braced(out, s.branches[i], indent);
          }
        }
      },
      stmt.node);
  out += '\n';
}

void print_block_into(std::string& out, const Block& block, int indent) {
  for (const auto& s : block) print_stmt(out, s, indent);
}

void print_method(std::string& out, const MethodDef& m, int indent) {
  indent_to(out, indent);
  if (m.exported) out += "export ";
  out += "fn " + m.sig.name + '(' + join(m.sig.params) + ") ";
  print_braced(out, m.body, indent);
  out += '\n';
}

void print_methods(std::string& out, const std::vector<MethodDef>& methods) {
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i) out += '\n';
    print_method(out, methods[i], 1);
  }
}

}  // namespace

std::string print_block(const Block& block, int indent) {
  std::string out;
  print_block_into(out, block, indent);
  return out;
}

std::string print(const AdaptableProgram& program) {
  std::string out;
  bool first = true;
  auto separate = [&] {
    if (!first) out += '\n';
    first = false;
  };
  if (!program.name.empty()) {
    separate();
    out += "service " + program.name + ";\n";
  }
  for (const auto& c : program.plain_classes) {
    separate();
    out += "class " + c.name + " {\n";
    print_methods(out, c.methods);
    out += "}\n";
  }
  for (const auto& c : program.adaptable_classes) {
    separate();
    out += "adaptable class " + c.name + " {\n";
    for (const auto& sig : c.adaptable_methods) {
      out += "  adaptable fn " + sig.name + '(' + join(sig.params) + ");\n";
    }
    if (!c.adaptable_methods.empty() && !c.plain_methods.empty()) out += '\n';
    print_methods(out, c.plain_methods);
    out += "}\n";
  }
  for (const auto& a : program.alternatives) {
    separate();
    out += "alternative " + a.name + " adapts " + a.adapts + " {\n";
    print_methods(out, a.method_defs);
    out += "}\n";
  }
  return out;
}

}  // namespace adapt::asl
