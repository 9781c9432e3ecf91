"""Named verification suites and their run configuration."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .classical import preset_subgroup, verify_abelianization, verify_duality, verify_gp_counts
from .engine import ReductionBudget, SearchPolicy
from .fincon import RelatorSet, preset, split_preset, verify_woronowicz_ideal, verify_wreath_comult, verify_wreath_iso
from .hopf import verify_coaction, verify_cqg_axioms, verify_hopf_laws
from .relations import verify_relations
from .report import VerificationReport
from .selfsim import verify_delta_rho, verify_psi_axiom, verify_restriction, verify_sigma_kappa

MAX_K = 10
MAX_DEPTH = 6


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by every suite; all of them are echoed in reports."""

    k: int = 2
    d: int = 2
    g: int = 2
    word_length: int = 2
    preset: str | None = None
    relators: str | None = None
    seed: int = 0
    samples: int | None = None
    tol: float = 1e-10
    budget: int | None = None

    def __post_init__(self):
        if not 2 <= self.k <= MAX_K:
            raise ValueError(f"k must be between 2 and {MAX_K}")
        if not 1 <= self.d <= MAX_DEPTH:
            raise ValueError(f"depth must be between 1 and {MAX_DEPTH}")
        if self.g < 1 or self.word_length < 0:
            raise ValueError("degree must be >= 1 and word length >= 0")
        if self.preset is not None and self.relators is not None:
            raise ValueError("give either a preset or a relator file, not both")

    @property
    def policy(self) -> SearchPolicy:
        return SearchPolicy(budget=ReductionBudget(self.budget)) if self.budget else SearchPolicy()

    def relator_set(self) -> RelatorSet:
        if self.relators is not None:
            return RelatorSet.load(self.relators, self.k)
        return preset(self.preset or "full", self.k)

    def with_preset_k(self) -> "RunConfig":
        """Adopt the alphabet size fixed by a preset name like 'cyclic3'."""
        if self.preset is None:
            return self
        _, k = split_preset(self.preset)
        return replace(self, k=k) if k is not None else self


def _samples(cfg: RunConfig, default: int) -> int:
    return cfg.samples if cfg.samples is not None else default


def _cqg(cfg):
    return verify_cqg_axioms(cfg.k, cfg.d, cfg.g, cfg.seed, _samples(cfg, 200), cfg.policy)


def _coaction(cfg):
    return verify_coaction(cfg.d, cfg.k, cfg.policy)


def _hopf(cfg):
    return verify_hopf_laws(cfg.k, cfg.d, cfg.seed, _samples(cfg, 50), cfg.policy)


def _restriction(cfg):
    return verify_restriction(cfg.k, cfg.d, cfg.word_length, cfg.policy)


def _sigma(cfg):
    return verify_sigma_kappa(cfg.k, cfg.d, cfg.policy)


def _psi(cfg):
    return verify_psi_axiom(cfg.k, cfg.d, cfg.g, cfg.seed, _samples(cfg, 20), cfg.policy)


def _delta_rho(cfg):
    return verify_delta_rho(cfg.k, cfg.d, cfg.g, cfg.word_length, cfg.seed, _samples(cfg, 10), cfg.policy)


def _woronowicz(cfg):
    return verify_woronowicz_ideal(cfg.relator_set(), cfg.word_length, cfg.policy)


def _wreath_iso(cfg):
    return verify_wreath_iso(cfg.relator_set(), cfg.d, cfg.g, cfg.seed, _samples(cfg, 6), policy=cfg.policy)


def _wreath_comult(cfg):
    return verify_wreath_comult(cfg.relator_set(), cfg.d, cfg.g, cfg.seed, _samples(cfg, 6), policy=cfg.policy)


def _relations(cfg):
    return verify_relations(cfg.k, cfg.d, cfg.policy)


def _abelianization(cfg):
    return verify_abelianization(cfg.k, cfg.d)


def _duality(cfg):
    return verify_duality(cfg.k, cfg.d)


def _gp_counts(cfg):
    name = split_preset(cfg.preset)[0] if cfg.preset else "full"
    return verify_gp_counts(preset_subgroup(name, cfg.k), cfg.d)


SUITES = {
    "relations": _relations,
    "cqg-axioms": _cqg,
    "hopf-laws": _hopf,
    "coaction": _coaction,
    "restriction": _restriction,
    "sigma-kappa": _sigma,
    "psi-axiom": _psi,
    "delta-rho": _delta_rho,
    "woronowicz-ideal": _woronowicz,
    "wreath-iso": _wreath_iso,
    "wreath-comult": _wreath_comult,
    "abelianization": _abelianization,
    "duality": _duality,
    "gp-counts": _gp_counts,
}


@lru_cache(maxsize=256)
def run_suite(name: str, cfg: RunConfig = RunConfig()) -> VerificationReport:
    """Run one named suite; results are cached per (name, config)."""
    try:
        runner = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r} (choose from {', '.join(SUITES)})") from None
    report = runner(cfg)
    report.params = dict(report.params, seed=cfg.seed)
    return report
