#!/usr/bin/env python3
"""Regenerates the bundled .mlir corpus under tests/corpus.

The emitted text is valid generic-format IR but not necessarily canonical;
run every file through sidekick-opt afterwards to normalize it in place:

  for f in tests/corpus/*.mlir; do build/tools/sidekick-opt "$f" -o "$f"; done

The dialect-export files (*_dialect.mlir) are produced by the tool itself:

  build/tools/sidekick-opt --export-irdl <name> -o tests/corpus/NN_<name>_dialect.mlir
"""

import os

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "corpus")

FILES = {}

# ---------------------------------------------------------------- listings

FILES["01_add_function.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: i32, %1: i32):
    %2 = "arith.addi"(%0, %1) : (i32, i32) -> i32
    "func.return"(%2) : (i32) -> ()
  }) {function_type = (i32, i32) -> i32, sym_name = "add"} : () -> ()
}) : () -> ()
'''

FILES["02_constant.mlir"] = '''"builtin.module"() ({
  %0 = "arith.constant"() {value = 42 : i32} : () -> i32
}) : () -> ()
'''

FILES["03_cond_branch.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: i1):
    "cf.cond_br"(%0)[^bb1, ^bb2] : (i1) -> ()
  ^bb1:
    "func.return"() : () -> ()
  ^bb2:
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "select"} : () -> ()
}) : () -> ()
'''

FILES["04_structured_if.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%0: i1):
    "scf.if"(%0) ({
      "scf.yield"() : () -> ()
    }, {
      "scf.yield"() : () -> ()
    }) : (i1) -> ()
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "branch"} : () -> ()
}) : () -> ()
'''

FILES["05_cmath_irdl.mlir"] = '''"builtin.module"() ({
  "irdl.dialect"() ({
    "irdl.type"() ({
      %0 = "irdl.is"() {expected = f32} : () -> !irdl.attribute
      %1 = "irdl.is"() {expected = f64} : () -> !irdl.attribute
      %2 = "irdl.any_of"(%0, %1) : (!irdl.attribute, !irdl.attribute) -> !irdl.attribute
      "irdl.parameters"(%2) : (!irdl.attribute) -> ()
    }) {sym_name = "complex"} : () -> ()
  }) {sym_name = "cmath"} : () -> ()
}) : () -> ()
'''

# ------------------------------------------------------------- hand variety

FILES["06_empty_module.mlir"] = '''"builtin.module"() ({
^bb0:
}) : () -> ()
'''

FILES["07_module_attrs.mlir"] = '''"builtin.module"() ({
^bb0:
}) {info = {name = "demo", nums = [1 : i32, 2 : i32, 3 : i32]}, sig = (i32, f64) -> index, size = 4 : i16} : () -> ()
'''

FILES["08_nested_modules.mlir"] = '''"builtin.module"() ({
  "builtin.module"() ({
    "builtin.module"() ({
      %inner = "arith.constant"() {value = 1 : i8} : () -> i8
    }) {depth = 2} : () -> ()
  }) {depth = 1} : () -> ()
  %outer = "arith.constant"() {value = -1 : i8} : () -> i8
}) : () -> ()
'''

FILES["09_floats.mlir"] = '''"builtin.module"() ({
  %a = "arith.constant"() {value = 1.5 : f32} : () -> f32
  %b = "arith.constant"() {value = 2.5} : () -> f64
  %c = "arith.constant"() {value = -0.25 : f32} : () -> f32
  %d = "arith.constant"() {value = 1024.0} : () -> f64
}) : () -> ()
'''

FILES["10_widths.mlir"] = "".join(
    ['"builtin.module"() ({\n']
    + [
        f'  %a{w} = "arith.constant"() {{value = 1 : i{w}}} : () -> i{w}\n'
        f'  %b{w} = "arith.constant"() {{value = {v} : i{w}}} : () -> i{w}\n'
        f'  %s{w} = "arith.addi"(%a{w}, %b{w}) : (i{w}, i{w}) -> i{w}\n'
        for w, v in [(1, 0), (8, 100), (16, 1000), (32, 70000), (64, 1 << 40)]
    ]
    + ["}) : () -> ()\n"]
)

FILES["11_index_arith.mlir"] = '''"builtin.module"() ({
  %lo = "arith.constant"() {value = 0 : index} : () -> index
  %hi = "arith.constant"() {value = 64 : index} : () -> index
  %mid = "arith.addi"(%lo, %hi) : (index, index) -> index
  %twice = "arith.addi"(%mid, %mid) : (index, index) -> index
}) : () -> ()
'''

FILES["12_loop.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
    %lb = "arith.constant"() {value = 0 : index} : () -> index
    %ub = "arith.constant"() {value = 10 : index} : () -> index
    %step = "arith.constant"() {value = 1 : index} : () -> index
    "scf.for"(%lb, %ub, %step) ({
    ^bb0(%iv: index):
      %next = "arith.addi"(%iv, %step) : (index, index) -> index
      "scf.yield"() : () -> ()
    }) : (index, index, index) -> ()
    "func.return"() : () -> ()
  }) {function_type = () -> (), sym_name = "count"} : () -> ()
}) : () -> ()
'''

FILES["13_nested_scf.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%flag: i1):
    %lb = "arith.constant"() {value = 0 : index} : () -> index
    %ub = "arith.constant"() {value = 8 : index} : () -> index
    "scf.for"(%lb, %ub, %ub) ({
    ^bb0(%iv: index):
      "scf.if"(%flag) ({
        %sum = "arith.addi"(%iv, %iv) : (index, index) -> index
        "scf.yield"() : () -> ()
      }, {
        "scf.yield"() : () -> ()
      }) : (i1) -> ()
      "scf.yield"() : () -> ()
    }) : (index, index, index) -> ()
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "body"} : () -> ()
}) : () -> ()
'''

FILES["14_cfg_diamond.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%cond: i1):
    "cf.cond_br"(%cond)[^left, ^right] : (i1) -> ()
  ^left:
    %one = "arith.constant"() {value = 1 : i32} : () -> i32
    "cf.br"()[^join] : () -> ()
  ^right:
    %two = "arith.constant"() {value = 2 : i32} : () -> i32
    "cf.br"()[^join] : () -> ()
  ^join:
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "pick"} : () -> ()
}) : () -> ()
'''

FILES["15_cfg_loop.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%cond: i1):
    "cf.br"()[^head] : () -> ()
  ^head:
    "cf.cond_br"(%cond)[^head, ^exit] : (i1) -> ()
  ^exit:
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "spin"} : () -> ()
}) : () -> ()
'''

FILES["16_multi_func.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%x: i64):
    "func.return"(%x) : (i64) -> ()
  }) {function_type = (i64) -> i64, sym_name = "identity"} : () -> ()
  "func.func"() ({
  ^bb0(%x: i64, %y: i64):
    %sum = "arith.addi"(%x, %y) : (i64, i64) -> i64
    "func.return"(%sum) : (i64) -> ()
  }) {function_type = (i64, i64) -> i64, sym_name = "sum"} : () -> ()
  "func.func"() ({
    "func.return"() : () -> ()
  }) {function_type = () -> (), sym_name = "noop"} : () -> ()
}) : () -> ()
'''

FILES["17_irdl_op_def.mlir"] = '''"builtin.module"() ({
  "irdl.dialect"() ({
    "irdl.type"() ({
      %any = "irdl.any"() : () -> !irdl.attribute
      "irdl.parameters"(%any) : (!irdl.attribute) -> ()
    }) {sym_name = "box"} : () -> ()
    "irdl.operation"() ({
      %elem = "irdl.is"() {expected = i32} : () -> !irdl.attribute
      %mode = "irdl.parametric"() {base_type = "builtin.string_attr"} : () -> !irdl.attribute
      "irdl.operands"(%elem) : (!irdl.attribute) -> ()
      "irdl.results"(%elem) : (!irdl.attribute) -> ()
      "irdl.attributes"(%mode) {attr_names = ["mode"]} : (!irdl.attribute) -> ()
    }) {sym_name = "wrap", traits = {pure = 1}} : () -> ()
    "irdl.operation"() ({
      %cond = "irdl.is"() {expected = i1} : () -> !irdl.attribute
      "irdl.operands"(%cond) : (!irdl.attribute) -> ()
      "irdl.results"() : () -> ()
    }) {successor_count = 2, sym_name = "hop", traits = {terminator = 1}} : () -> ()
  }) {sym_name = "shape"} : () -> ()
}) : () -> ()
'''

FILES["18_irdl_attr.mlir"] = '''"builtin.module"() ({
  "irdl.dialect"() ({
    "irdl.attribute"() ({
      %base = "irdl.parametric"() {base_type = "builtin.integer_type"} : () -> !irdl.attribute
      "irdl.parameters"(%base) : (!irdl.attribute) -> ()
    }) {sym_name = "meta"} : () -> ()
    "irdl.type"() ({
      %ints = "irdl.parametric"() {base_type = "builtin.integer_type"} : () -> !irdl.attribute
      %narrow = "irdl.any_of"(%ints) : (!irdl.attribute) -> !irdl.attribute
      %width = "irdl.all_of"(%ints, %narrow) : (!irdl.attribute, !irdl.attribute) -> !irdl.attribute
      "irdl.parameters"(%width) : (!irdl.attribute) -> ()
    }) {sym_name = "sized"} : () -> ()
  }) {sym_name = "kind"} : () -> ()
}) : () -> ()
'''

FILES["19_irdl_shared.mlir"] = '''"builtin.module"() ({
  "irdl.dialect"() ({
    "irdl.operation"() ({
      %same = "irdl.any"() : () -> !irdl.attribute
      "irdl.operands"(%same, %same) : (!irdl.attribute, !irdl.attribute) -> ()
      "irdl.results"(%same) : (!irdl.attribute) -> ()
    }) {sym_name = "merge"} : () -> ()
  }) {sym_name = "demo"} : () -> ()
}) : () -> ()
'''

FILES["20_attr_nest.mlir"] = '''"builtin.module"() ({
^bb0:
}) {layers = [{kind = "dense", weights = [0.5, 0.25]}, {kind = "sparse", table = {cols = [1 : index, 3 : index], rows = 2 : index}}], version = [7 : i8, "beta"]} : () -> ()
'''

# ------------------------------------------------------------ generated sets


def chain(width, length):
    lines = ['"builtin.module"() ({']
    lines.append(
        f'  %v0 = "arith.constant"() {{value = 1 : i{width}}} : () -> i{width}'
    )
    for i in range(1, length + 1):
        value = (i * 37) % (1 << min(width, 16))
        lines.append(
            f'  %c{i} = "arith.constant"() {{value = {value} : i{width}}}'
            f" : () -> i{width}"
        )
        lines.append(
            f'  %v{i} = "arith.addi"(%v{i - 1}, %c{i})'
            f" : (i{width}, i{width}) -> i{width}"
        )
    lines.append("}) : () -> ()")
    return "\n".join(lines) + "\n"


for index, (width, length) in enumerate(
    [(8, 10), (8, 40), (16, 10), (16, 40), (32, 10), (32, 40), (64, 10), (64, 40)]
):
    FILES[f"{21 + index:02}_chain_i{width}_{length}.mlir"] = chain(width, length)


def if_ladder(depth):
    lines = [
        '"builtin.module"() ({',
        '  "func.func"() ({',
        "  ^bb0(%cond: i1):",
    ]
    indent = "    "
    for _ in range(depth):
        lines.append(f'{indent}"scf.if"(%cond) ({{')
        indent += "  "
    lines.append(f'{indent}"scf.yield"() : () -> ()')
    for _ in range(depth):
        indent = indent[:-2]
        lines.append(f"{indent}}}, {{")
        lines.append(f'{indent}  "scf.yield"() : () -> ()')
        lines.append(f"{indent}}}) : (i1) -> ()")
        if indent != "    ":
            lines.append(f'{indent}"scf.yield"() : () -> ()')
    lines.append('    "func.return"() : () -> ()')
    lines.append('  }) {function_type = (i1) -> (), sym_name = "ladder"} : () -> ()')
    lines.append("}) : () -> ()")
    return "\n".join(lines) + "\n"


for index, depth in enumerate([2, 3, 4, 5]):
    FILES[f"{29 + index:02}_if_ladder_{depth}.mlir"] = if_ladder(depth)


def cfg(blocks):
    lines = [
        '"builtin.module"() ({',
        '  "func.func"() ({',
        "  ^bb0(%cond: i1):",
        f'    "cf.cond_br"(%cond)[^s1, ^s{blocks - 1}] : (i1) -> ()',
    ]
    for b in range(1, blocks - 1):
        lines.append(f"  ^s{b}:")
        lines.append(
            f'    %k{b} = "arith.constant"() {{value = {b} : i32}} : () -> i32'
        )
        lines.append(f'    "cf.br"()[^s{b + 1}] : () -> ()')
    lines.append(f"  ^s{blocks - 1}:")
    lines.append('    "func.return"() : () -> ()')
    lines.append('  }) {function_type = (i1) -> (), sym_name = "walk"} : () -> ()')
    lines.append("}) : () -> ()")
    return "\n".join(lines) + "\n"


for index, blocks in enumerate([4, 6, 8, 10]):
    FILES[f"{33 + index:02}_cfg_{blocks}.mlir"] = cfg(blocks)


def loop_nest(depth):
    lines = [
        '"builtin.module"() ({',
        '  "func.func"() ({',
        '    %bound = "arith.constant"() {value = 4 : index} : () -> index',
    ]
    indent = "    "
    for level in range(depth):
        lines.append(f'{indent}"scf.for"(%bound, %bound, %bound) ({{')
        lines.append(f"{indent}^bb0(%i{level}: index):")
        indent += "  "
    lines.append(
        f'{indent}%acc = "arith.addi"(%i0, %i{depth - 1}) : (index, index) -> index'
    )
    for _ in range(depth):
        lines.append(f'{indent}"scf.yield"() : () -> ()')
        indent = indent[:-2]
        lines.append(f"{indent}}}) : (index, index, index) -> ()")
    lines.append('    "func.return"() : () -> ()')
    lines.append('  }) {function_type = () -> (), sym_name = "nest"} : () -> ()')
    lines.append("}) : () -> ()")
    return "\n".join(lines) + "\n"


for index, depth in enumerate([2, 3, 4, 5]):
    FILES[f"{37 + index:02}_loop_nest_{depth}.mlir"] = loop_nest(depth)


def many_funcs(count):
    lines = ['"builtin.module"() ({']
    for f in range(count):
        width = [8, 32, 64][f % 3]
        lines += [
            '  "func.func"() ({',
            f"  ^bb0(%x: i{width}, %y: i{width}):",
            f'    %s = "arith.addi"(%x, %y) : (i{width}, i{width}) -> i{width}',
            f'    "func.return"(%s) : (i{width}) -> ()',
            f"  }}) {{function_type = (i{width}, i{width}) -> i{width},"
            f' sym_name = "fn{f}"}} : () -> ()',
        ]
    lines.append("}) : () -> ()")
    return "\n".join(lines) + "\n"


for index, count in enumerate([3, 6, 9, 12]):
    FILES[f"{41 + index:02}_funcs_{count}.mlir"] = many_funcs(count)

FILES["45_mixed_control.mlir"] = '''"builtin.module"() ({
  "func.func"() ({
  ^bb0(%cond: i1):
    "cf.cond_br"(%cond)[^work, ^done] : (i1) -> ()
  ^work:
    %lb = "arith.constant"() {value = 0 : index} : () -> index
    "scf.for"(%lb, %lb, %lb) ({
    ^bb0(%iv: index):
      "scf.if"(%cond) ({
        "scf.yield"() : () -> ()
      }, {
        "scf.yield"() : () -> ()
      }) : (i1) -> ()
      "scf.yield"() : () -> ()
    }) : (index, index, index) -> ()
    "cf.br"()[^done] : () -> ()
  ^done:
    "func.return"() : () -> ()
  }) {function_type = (i1) -> (), sym_name = "drive"} : () -> ()
}) : () -> ()
'''

FILES["46_mixed_math.mlir"] = '''"builtin.module"() ({
  %f = "arith.constant"() {value = 3.5 : f32} : () -> f32
  "func.func"() ({
  ^bb0(%x: i16):
    %one = "arith.constant"() {value = 1 : i16} : () -> i16
    %two = "arith.addi"(%one, %one) : (i16, i16) -> i16
    %sum = "arith.addi"(%x, %two) : (i16, i16) -> i16
    "func.return"(%sum) : (i16) -> ()
  }) {function_type = (i16) -> i16, sym_name = "bump"} : () -> ()
  "builtin.module"() ({
    %deep = "arith.constant"() {value = 9 : i64} : () -> i64
  }) {tag = "inner"} : () -> ()
}) : () -> ()
'''


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, text in sorted(FILES.items()):
        with open(os.path.join(OUT, name), "w") as handle:
            handle.write(text)
    print(f"wrote {len(FILES)} files to {os.path.abspath(OUT)}")


if __name__ == "__main__":
    main()
