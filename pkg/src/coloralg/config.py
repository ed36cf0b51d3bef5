"""Session configuration: one TOML or JSON file describing (Gamma, eps, k, G, E).

Schema (TOML)::

    name = "mixed_k1111"
    k = [1, 1, 1, 1]
    t_colors = [[0, 0], [0, 1], [1, 0]]   # t_{k1+1} .. t_k

    [gamma]
    invariant_factors = [2, 2]

    [epsilon]
    exponent_matrix = [[2, 2], [2, 0]]
    denominator = 4                       # optional; entries are multiples of L/denominator

    [G]
    generators = [["1", "0"], ["1/2", "1"]]   # rows: images of the free generators in Q^(k1+k2)

    [hat]
    images = [[0, 1], [0, 0]]

    [gamma0]                              # optional; default is the trivial subgroup
    generators = [[1, 0]]                 # ordered-product e-table, or
    elements = [[0, 0], [1, 0]]         # explicit elements with
    e_table = [{alpha = [1, 0], beta = [1, 0], value = "-1"}, ...]   # unlisted pairs default to 1

    [truncation]                          # optional
    max_t_degree = 2
    a_radius = 1

    [run]                                 # optional
    seed = 0
    probes = 64
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .algebra import ColorAlgebra, Truncation
from .grading import Bicharacter, GradingGroup, validate_bicharacter
from .report import ConfigurationError, Report
from .structure import GammaZero, GroupG, KSignature, StructureData


@dataclass(frozen=True)
class SessionConfig:
    name: str
    structure: StructureData
    max_t_degree: int | None = None
    a_radius: int | None = None
    seed: int = 0
    probes: int = 64
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def is_finite(self) -> bool:
        ks = self.structure.ksig
        return ks.k1 + ks.k2 + ks.k3 == 0

    def truncation(self, default_radius: int = 1, default_degree: int = 2) -> Truncation:
        r = default_radius if self.a_radius is None else self.a_radius
        t = default_degree if self.max_t_degree is None else self.max_t_degree
        if self.is_finite:
            t = self.structure.ksig.k4 if self.max_t_degree is None else t
        return Truncation.box(self.structure.G.rank, r, t)

    def algebra(self) -> ColorAlgebra:
        return ColorAlgebra(self.structure)

    def with_overrides(self, **kw) -> "SessionConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


def fixture_names() -> list[str]:
    root = resources.files("coloralg") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".toml"))


def fixture_path(name: str) -> Path:
    p = resources.files("coloralg") / "fixtures" / f"{name}.toml"
    if not p.is_file():
        raise FileNotFoundError(f"no bundled fixture {name!r}; available: {', '.join(fixture_names())}")
    return Path(str(p))


def load_fixture(name: str) -> SessionConfig:
    return load_and_validate(fixture_path(name))


def read_file(path) -> dict:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return json.loads(text)
    return tomllib.loads(text)


def load_and_validate(path) -> SessionConfig:
    """Parse and fully validate a config file; raise ConfigurationError listing every violation."""
    data = read_file(path)
    data.setdefault("name", Path(path).stem)
    return from_dict(data)


def _frac(x) -> Fraction:
    return Fraction(str(x)) if isinstance(x, str) else Fraction(x)


def from_dict(data: dict) -> SessionConfig:
    schema = Report("schema")

    def need(d, key, where):
        if key not in d:
            schema.fail("config.missing", f"missing key {where}{key}")
            return None
        return d[key]

    gamma = need(data, "gamma", "")
    eps = need(data, "epsilon", "")
    k = need(data, "k", "")
    if not schema.ok:
        raise ConfigurationError([schema])
    group = GradingGroup(tuple(need(gamma, "invariant_factors", "gamma.")))
    matrix = need(eps, "exponent_matrix", "epsilon.")
    if not schema.ok:
        raise ConfigurationError([schema])
    denom = eps.get("denominator")
    brep = validate_bicharacter(group, matrix, denom)
    if not brep.ok:
        raise ConfigurationError([brep])
    bichar = Bicharacter.from_exponents(group, matrix, denom)

    if len(k) != 4:
        schema.fail("config.k", "k must list four block sizes [k1, k2, k3, k4]")
        raise ConfigurationError([schema])
    t_colors = tuple(group.element(c) for c in data.get("t_colors", []))
    ksig = KSignature(*(int(x) for x in k), t_colors=t_colors)

    Gd = data.get("G", {})
    gens = tuple(tuple(_frac(x) for x in row) for row in Gd.get("generators", []))
    hats = tuple(group.element(h) for h in data.get("hat", {}).get("images", []))
    G = GroupG(gens, hats, ksig.eigen_rank)

    g0 = data.get("gamma0")
    if not g0:
        gamma0 = GammaZero.trivial(bichar)
    elif "generators" in g0:
        gamma0 = GammaZero.from_generators(bichar, g0["generators"])
    else:
        els = tuple(sorted(group.element(e) for e in g0.get("elements", [])))
        field_ = bichar.field
        table = {(a, b): field_.one for a in els for b in els}
        for entry in g0.get("e_table", []):
            a, b = group.element(entry["alpha"]), group.element(entry["beta"])
            table[(a, b)] = field_.coerce(str(entry["value"]))
        gamma0 = GammaZero(els, table)

    sd = StructureData(bichar, ksig, G, gamma0)
    bad = [r for r in sd.validate() if not r.ok]
    if bad:
        raise ConfigurationError(bad)
    trunc = data.get("truncation", {})
    run = data.get("run", {})
    return SessionConfig(
        name=str(data.get("name", "config")),
        structure=sd,
        max_t_degree=trunc.get("max_t_degree"),
        a_radius=trunc.get("a_radius"),
        seed=int(run.get("seed", 0)),
        probes=int(run.get("probes", 64)),
        raw=data,
    )
