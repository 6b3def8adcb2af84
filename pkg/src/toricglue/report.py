"""Serialization of results to plain JSON-compatible records and back.

A loaded report is re-checked by :func:`verify_document` without trusting
whoever wrote it.
"""
from __future__ import annotations

from typing import Any, Optional

from . import __version__
from .codim2 import BinomialPair, ClassificationReport, SimplicialCodim2
from .oracle import relation_check
from .semigroup import (
    FreeLeaf,
    GeneratorSet,
    GluedNode,
    GluingCertificate,
    GluingResult,
    GluingTree,
    MembershipCertificate,
    Partition,
)


def certificate_to_dict(cert: GluingCertificate) -> dict[str, Any]:
    return {
        "left": sorted(cert.partition.left),
        "right": sorted(cert.partition.right),
        "w": list(cert.w),
        "k": cert.k,
        "prime": cert.prime,
        "left_coefficients": list(cert.left_combo.coefficients),
        "right_coefficients": list(cert.right_combo.coefficients),
    }


def certificate_from_dict(d: dict[str, Any]) -> GluingCertificate:
    return GluingCertificate(
        partition=Partition(frozenset(d["left"]), frozenset(d["right"])),
        w=tuple(d["w"]),
        k=d["k"],
        prime=d["prime"],
        left_combo=MembershipCertificate(tuple(d["left_coefficients"])),
        right_combo=MembershipCertificate(tuple(d["right_coefficients"])),
    )


def tree_to_dict(tree: GluingTree) -> dict[str, Any]:
    gens = [list(g) for g in tree.generators]
    if isinstance(tree, FreeLeaf):
        return {"free": gens}
    return {
        "generators": gens,
        "certificate": certificate_to_dict(tree.certificate),
        "left": tree_to_dict(tree.left),
        "right": tree_to_dict(tree.right),
    }


def tree_from_dict(d: dict[str, Any]) -> GluingTree:
    if "free" in d:
        return FreeLeaf(GeneratorSet.of(d["free"]))
    return GluedNode(
        GeneratorSet.of(d["generators"]),
        certificate_from_dict(d["certificate"]),
        tree_from_dict(d["left"]),
        tree_from_dict(d["right"]),
    )


def binomials_to_dict(pair: BinomialPair) -> dict[str, Any]:
    f1, f2 = pair.display()
    return {
        "y_lead": pair.y_lead,
        "y_other": pair.y_other,
        "x_first": list(pair.x_first),
        "gamma": pair.gamma,
        "deltas": list(pair.deltas),
        "prime": pair.prime,
        "k": pair.k,
        "alpha": pair.alpha,
        "swapped": pair.swapped,
        "F1": f1,
        "F2": f2,
    }


def binomials_from_dict(d: dict[str, Any]) -> BinomialPair:
    return BinomialPair(
        y_lead=d["y_lead"], y_other=d["y_other"], x_first=tuple(d["x_first"]), gamma=d["gamma"],
        deltas=tuple(d["deltas"]), prime=d["prime"], k=d["k"], alpha=d["alpha"], swapped=d["swapped"],
    )


def codim2_to_dict(t: SimplicialCodim2) -> dict[str, Any]:
    return {"n": t.n, "c": t.c, "a": list(t.a), "b": list(t.b), "projective": t.projective}


def classification_to_dict(r: ClassificationReport) -> dict[str, Any]:
    return {
        "kind": "classification",
        "input": codim2_to_dict(r.input),
        "normalized": codim2_to_dict(r.normalized),
        "delta": r.delta,
        "support": r.support.value,
        "fast_path": r.fast_path.value if r.fast_path else None,
        "alpha": r.alpha,
        "c_prime": r.c_prime,
        "gT": r.gT,
        "omega": r.omega,
        "case": r.case.kind.value,
        "prime": r.case.prime,
        "complete_intersection": r.complete_intersection,
        "homogeneous": r.input.is_homogeneous(),
        "certificate": certificate_to_dict(r.certificate) if r.certificate else None,
        "prime_certificates": [certificate_to_dict(c) for c in r.prime_certificates],
        "binomials": binomials_to_dict(r.binomials) if r.binomials else None,
    }


def gluing_to_dict(gens: GeneratorSet, part: Partition, prime: Optional[int], kmax: int,
                   res: GluingResult) -> dict[str, Any]:
    return {
        "kind": "glue",
        "generators": [list(g) for g in gens],
        "partition": sorted(part.left),
        "prime": prime,
        "kmax": kmax,
        "status": res.status.value,
        "w": list(res.w) if res.w else None,
        "reason": res.reason,
        "certificate": certificate_to_dict(res.certificate) if res.certificate else None,
    }


def envelope(body: dict[str, Any], seed: Optional[int] = None) -> dict[str, Any]:
    return {"tool": "toricglue", "version": __version__, "seed": seed, **body}


def verify_document(doc: dict[str, Any]) -> bool:
    """Re-check every certificate in a loaded report."""
    kind = doc.get("kind")
    if kind == "classification":
        norm = doc["normalized"]
        t = SimplicialCodim2(norm["c"], tuple(norm["a"]), tuple(norm["b"]))
        gens = t.generators()
        certs = ([doc["certificate"]] if doc["certificate"] else []) + doc["prime_certificates"]
        ok = all(certificate_from_dict(c).verify(gens) for c in certs)
        if doc["binomials"]:
            ok &= relation_check(binomials_from_dict(doc["binomials"]), t)
        return ok
    if kind == "glue":
        if doc["certificate"] is None:
            return True
        return certificate_from_dict(doc["certificate"]).verify(GeneratorSet.of(doc["generators"]))
    if kind == "completely_glued":
        if doc["tree"] is None:
            return True
        tree = tree_from_dict(doc["tree"])
        return tree.generators == GeneratorSet.of(doc["generators"]) and tree.verify()
    return True
