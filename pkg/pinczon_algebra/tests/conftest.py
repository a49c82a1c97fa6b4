import json
from pathlib import Path

from pytest import fixture

from pinczon_algebra import AlgebraFile, ModuleData, ModuleFile, QuadraticStructure

_UNITS = [(0, 0), (0, 1), (1, 0), (1, 1)]


def _sl2_records():
    # basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f
    return [
        {"inputs": [1, 2], "output": 3, "coeff": "1"},
        {"inputs": [2, 1], "output": 3, "coeff": "-1"},
        {"inputs": [3, 1], "output": 1, "coeff": "2"},
        {"inputs": [1, 3], "output": 1, "coeff": "-2"},
        {"inputs": [3, 2], "output": 2, "coeff": "-2"},
        {"inputs": [2, 3], "output": 2, "coeff": "2"},
    ]


def _matrix_product(a: int, c: int) -> int | None:
    (i, j), (k, r) = _UNITS[a], _UNITS[c]
    return _UNITS.index((i, r)) if j == k else None


@fixture
def json_file(tmp_path):
    """Write a dict as a JSON file under tmp_path"""

    def _write(name: str, data: dict) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2), encoding="utf-8")
        return path

    return _write


@fixture
def sl2_data() -> dict:
    return {
        "name": "sl2",
        "kind": "lie",
        "dim": 3,
        "degrees": [0, 0, 0],
        "b": [["0", "4", "0"], ["4", "0", "0"], ["0", "0", "8"]],
        "structure": _sl2_records(),
    }


@fixture
def sl2_identity_data(sl2_data) -> dict:
    return {**sl2_data, "name": "sl2_identity", "b": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}


@fixture
def adjoint_data() -> dict:
    return {
        "dim": 3,
        "degrees": [0, 0, 0],
        "left_action": [{"v": r["inputs"][0], "m": r["inputs"][1], "out": r["output"], "coeff": r["coeff"]} for r in _sl2_records()],
    }


@fixture
def matrices_data() -> dict:
    structure = []
    b = [["0"] * 4 for _ in range(4)]
    for a in range(4):
        for c in range(4):
            if (out := _matrix_product(a, c)) is not None:
                structure.append({"inputs": [a + 1, c + 1], "output": out + 1, "coeff": "1"})
            (i, j), (k, r) = _UNITS[a], _UNITS[c]
            if j == k and i == r:
                b[a][c] = "1"
    return {"name": "gl2", "kind": "associative", "dim": 4, "degrees": [0, 0, 0, 0], "b": b, "structure": structure}


@fixture
def regular_bimodule_data() -> dict:
    left, right = [], []
    for v in range(4):
        for m in range(4):
            if (out := _matrix_product(v, m)) is not None:
                left.append({"v": v + 1, "m": m + 1, "out": out + 1, "coeff": "1"})
            if (out := _matrix_product(m, v)) is not None:
                right.append({"v": v + 1, "m": m + 1, "out": out + 1, "coeff": "1"})
    return {"dim": 4, "degrees": [0, 0, 0, 0], "left_action": left, "right_action": right}


@fixture
def one_dim_data() -> dict:
    return {
        "name": "line",
        "kind": "commutative",
        "dim": 1,
        "degrees": [0],
        "b": [["1"]],
        "structure": [{"inputs": [1, 1], "output": 1, "coeff": "1"}],
    }


@fixture
def diagonal_data() -> dict:
    return {
        "name": "diagonal",
        "kind": "commutative",
        "dim": 2,
        "degrees": [0, 0],
        "b": [["1", "0"], ["0", "1"]],
        "structure": [
            {"inputs": [1, 1], "output": 1, "coeff": "1"},
            {"inputs": [2, 2], "output": 2, "coeff": "1"},
        ],
    }


@fixture
def diagonal_regular_data() -> dict:
    return {
        "dim": 2,
        "degrees": [0, 0],
        "left_action": [{"v": 1, "m": 1, "out": 1, "coeff": "1"}, {"v": 2, "m": 2, "out": 2, "coeff": "1"}],
    }


@fixture
def abelian_data() -> dict:
    return {"name": "abelian", "kind": "lie", "dim": 1, "degrees": [0], "b": [["1"]], "structure": []}


@fixture
def trivial_module_data() -> dict:
    return {"dim": 1, "degrees": [0]}


@fixture
def sl2(sl2_data) -> QuadraticStructure:
    return AlgebraFile.model_validate(sl2_data).to_structure()


@fixture
def sl2_as_associative(sl2_data) -> QuadraticStructure:
    return AlgebraFile.model_validate({**sl2_data, "kind": "associative"}).to_structure()


@fixture
def adjoint(adjoint_data) -> ModuleData:
    return ModuleFile.model_validate(adjoint_data).to_module()


@fixture
def matrices(matrices_data) -> QuadraticStructure:
    return AlgebraFile.model_validate(matrices_data).to_structure()


@fixture
def regular_bimodule(regular_bimodule_data) -> ModuleData:
    return ModuleFile.model_validate(regular_bimodule_data).to_module()


@fixture
def one_dim(one_dim_data) -> QuadraticStructure:
    return AlgebraFile.model_validate(one_dim_data).to_structure()


@fixture
def diagonal(diagonal_data) -> QuadraticStructure:
    return AlgebraFile.model_validate(diagonal_data).to_structure()


@fixture
def diagonal_regular(diagonal_regular_data) -> ModuleData:
    return ModuleFile.model_validate(diagonal_regular_data).to_module()


@fixture
def abelian(abelian_data) -> QuadraticStructure:
    return AlgebraFile.model_validate(abelian_data).to_structure()


@fixture
def trivial_module(trivial_module_data) -> ModuleData:
    return ModuleFile.model_validate(trivial_module_data).to_module()
