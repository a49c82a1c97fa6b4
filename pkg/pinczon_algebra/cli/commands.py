from collections.abc import Callable
from logging import getLogger
from logging.config import dictConfig
from pathlib import Path
from random import Random
from typing import Annotated

from hydra.errors import HydraException
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table
from typer import Argument, Exit, Option, Typer, echo

from ..algebra import (
    MultilinearMap,
    ValidationReport,
    check_pairing,
    check_phi_trials,
    cohomology_dims,
    double_extension,
    form_of_map,
    pinczon_bracket,
    pinczon_bracket_sym,
    verify_phi,
    verify_structure,
)
from ..config import AlgebraFile, CochainFile, EngineConfiguration, FormFile, ModuleFile, load_config
from ..exceptions import (
    ConfigNotFoundError,
    InvalidInputError,
    InvalidModuleError,
    InvalidStructureError,
    ResourceLimitError,
)
from .common import FlavorChoice, PinczonCommand

log = getLogger(__name__)

__all__ = (
    "bracket",
    "check_phi",
    "cohomology",
    "double_extension_file",
    "main",
    "structure_form",
    "verify",
)

OK, FAILED, PARSE_ERROR = 0, 1, 2

_DEFAULT_FLAVOR = {"associative": "hochschild", "commutative": "hochschild", "lie": "chevalley"}

InputFile = Annotated[Path, Argument(exists=True, file_okay=True, dir_okay=False, writable=False, readable=True, resolve_path=True)]
ConfigDir = Annotated[str, Option(help="Directory of engine configs, searched on or above the working directory")]
ConfigName = Annotated[str, Option(help="Config in the config directory to compose on top of the defaults")]


def _configure_logging() -> None:
    logging_config = OmegaConf.load(Path(__file__).resolve().parent.parent / "config" / "hydra" / "hydra" / "job_logging" / "custom.yaml")
    dictConfig(OmegaConf.to_container(logging_config, resolve=True))


def _raise_or_exit(code: int, exit: bool) -> int:
    if exit:
        raise Exit(code)
    return code


def _guarded(foo: Callable[[], int]) -> int:
    """Run a command body, mapping parse failures to 2 and semantic failures to 1"""
    try:
        return foo()
    except (ValidationError, OSError, ConfigNotFoundError, HydraException, OmegaConfBaseException) as e:
        log.error(f"Could not read input: {e}")
        return PARSE_ERROR
    except (InvalidInputError, InvalidModuleError, InvalidStructureError, ResourceLimitError) as e:
        log.error(str(e))
        return FAILED


def _engine(config_dir: str, config_name: str, **flags) -> EngineConfiguration:
    engine = load_config(config_dir, config_name, basepath=str(Path.cwd())) if config_dir else EngineConfiguration()
    return engine.model_copy(update={key: value for key, value in flags.items() if value is not None})


def _check_arity(arity: int, engine: EngineConfiguration) -> None:
    if arity > engine.max_arity:
        raise InvalidInputError(f"Arity {arity} is above the configured maximum of {engine.max_arity}")


def _print_report(report: ValidationReport) -> None:
    Console(highlight=False).print(report.render())


def _flavor(flavor: FlavorChoice | None, algebra: AlgebraFile) -> str:
    if flavor is not None:
        return FlavorChoice(flavor).value
    if algebra.kind not in _DEFAULT_FLAVOR:
        raise InvalidInputError(f"Cohomology needs a strict algebra, got {algebra.kind}")
    return _DEFAULT_FLAVOR[algebra.kind]


def verify(
    algebra: InputFile,
    config_dir: ConfigDir = "",
    config_name: ConfigName = "",
    _exit: Annotated[bool, Argument(hidden=True)] = True,
):
    """Check the pairing, invariance, structure equation and flavor constraints of an algebra

    Args:
        algebra (Path): JSON algebra file
        config_dir (str, optional): directory of engine configs
        config_name (str, optional): config to compose on top of the defaults
    """

    def _verify() -> int:
        engine = _engine(config_dir, config_name)
        file = AlgebraFile.read(algebra)
        for records in file.taylor_records():
            _check_arity(len(records[0].inputs) if records else 2, engine)

        pairing = check_pairing(file.basis, file.b)
        if not pairing.passed:
            _print_report(pairing)
            return FAILED
        report = verify_structure(file.to_structure())
        _print_report(report)
        return OK if report.passed else FAILED

    return _raise_or_exit(_guarded(_verify), _exit)


def structure_form(
    algebra: InputFile,
    arity: Annotated[int, Option(help="Taylor arity k of the coefficient whose (k+1)-form is emitted")] = 2,
    _exit: Annotated[bool, Argument(hidden=True)] = True,
):
    """Emit the form b(q(x_1..x_k), x_{k+1}) of an algebra, on V[1], as a form file

    Args:
        algebra (Path): JSON algebra file
        arity (int, optional): Taylor arity. Defaults to 2.
    """

    def _structure_form() -> int:
        s = AlgebraFile.read(algebra).to_structure()
        q = next((q for q in s.taylor if q.arity == arity), MultilinearMap.zero(s.basis, arity))
        echo(FormFile.from_form(form_of_map(q, s.pairing)).dumps())
        return OK

    return _raise_or_exit(_guarded(_structure_form), _exit)


def bracket(
    first: InputFile,
    second: InputFile,
    algebra: InputFile,
    symmetric: Annotated[bool, Option(help="Use the bracket on totally symmetric forms")] = False,
    _exit: Annotated[bool, Argument(hidden=True)] = True,
):
    """Emit the Pinczon bracket of two cyclic forms, using the pairing of an algebra file

    Args:
        first (Path): JSON form file
        second (Path): JSON form file
        algebra (Path): JSON algebra file providing the basis and b
        symmetric (bool, optional): bracket totally symmetric forms instead. Defaults to False.
    """

    def _bracket() -> int:
        file = AlgebraFile.read(algebra)
        pairing = file.to_pairing()
        f = FormFile.read(first).to_form(file.basis)
        g = FormFile.read(second).to_form(file.basis)
        result = pinczon_bracket_sym(f, g, pairing) if symmetric else pinczon_bracket(f, g, pairing)
        echo(FormFile.from_form(result).dumps())
        return OK

    return _raise_or_exit(_guarded(_bracket), _exit)


def double_extension_file(
    algebra: InputFile,
    module: InputFile,
    _exit: Annotated[bool, Argument(hidden=True)] = True,
):
    """Emit the double semidirect product of an algebra by a module as an algebra file

    Args:
        algebra (Path): JSON algebra file
        module (Path): JSON module file
    """

    def _double_extension() -> int:
        s = AlgebraFile.read(algebra).to_structure()
        m = ModuleFile.read(module).to_module()
        echo(AlgebraFile.from_structure(double_extension(s, m)).dumps())
        return OK

    return _raise_or_exit(_guarded(_double_extension), _exit)


def cohomology(
    algebra: InputFile,
    module: InputFile,
    flavor: Annotated[FlavorChoice | None, Option(help="Cochain complex, defaults to the one matching the algebra kind")] = None,
    degree: Annotated[int, Option(help="Cochain arity k")] = 1,
    cochain_degree: Annotated[int, Option(help="Internal degree of the cochains, 0 unless given rather than 2 - k")] = 0,
    size_cap: Annotated[int | None, Option(help="Largest cochain space to build, in coefficients")] = None,
    config_dir: ConfigDir = "",
    config_name: ConfigName = "",
    _exit: Annotated[bool, Argument(hidden=True)] = True,
):
    """Print cocycle, coboundary and Betti dimensions in arity k

    Args:
        algebra (Path): JSON algebra file
        module (Path): JSON module file
        flavor (FlavorChoice, optional): hochschild, harrison or chevalley
        degree (int, optional): cochain arity. Defaults to 1.
        cochain_degree (int, optional): internal cochain degree. Defaults to 0, not 2 - k.
        size_cap (int, optional): overrides the configured size cap
    """

    def _cohomology() -> int:
        engine = _engine(config_dir, config_name, size_cap=size_cap)
        _check_arity(degree, engine)
        file = AlgebraFile.read(algebra)
        s, m = file.to_structure(), ModuleFile.read(module).to_module()
        dims = cohomology_dims(s, m, _flavor(flavor, file), degree, size_cap=engine.size_cap, degree=cochain_degree)

        table = Table(title=f"{dims.flavor} cohomology of {s.name or s.flavor}")
        for column in ("arity", "degree", "cochains", "dim ker", "dim im", "betti"):
            table.add_column(column, justify="right")
        table.add_row(*(str(x) for x in (dims.arity, dims.degree, dims.dimension, dims.kernel, dims.image, dims.betti)))
        Console().print(table)
        return OK

    return _raise_or_exit(_guarded(_cohomology), _exit)


def check_phi(
    algebra: InputFile,
    module: InputFile,
    flavor: Annotated[FlavorChoice | None, Option(help="Cochain complex, defaults to the one matching the algebra kind")] = None,
    arity: Annotated[int, Option(help="Cochain arity k")] = 1,
    trials: Annotated[int | None, Option(help="Number of random cochains")] = None,
    seed: Annotated[int | None, Option(help="Seed of the random cochains")] = None,
    cochain: Annotated[
        Path | None, Option(exists=True, file_okay=True, dir_okay=False, writable=False, readable=True, resolve_path=True, help="Check this cochain only")
    ] = None,
    cochain_degree: Annotated[int, Option(help="Internal degree of the random cochains, 0 unless given rather than 2 - k")] = 0,
    config_dir: ConfigDir = "",
    config_name: ConfigName = "",
    _exit: Annotated[bool, Argument(hidden=True)] = True,
):
    """Check that lifting cochains to the double extension intertwines the classical and Pinczon differentials

    Args:
        algebra (Path): JSON algebra file
        module (Path): JSON module file
        flavor (FlavorChoice, optional): hochschild, harrison or chevalley
        arity (int, optional): cochain arity. Defaults to 1.
        trials (int, optional): overrides the configured number of trials
        seed (int, optional): overrides the configured seed
        cochain (Path, optional): JSON cochain file to check instead of random cochains
        cochain_degree (int, optional): internal degree of the random cochains. Defaults to 0.
    """

    def _check_phi() -> int:
        engine = _engine(config_dir, config_name, trials=trials, seed=seed)
        file = AlgebraFile.read(algebra)
        s, m = file.to_structure(), ModuleFile.read(module).to_module()
        chosen = _flavor(flavor, file)

        if cochain is not None:
            c = CochainFile.read(cochain).to_cochain(s, m, chosen)
            _check_arity(c.arity, engine)
            report = verify_phi(c, s, m)
        else:
            _check_arity(arity, engine)
            used_seed = engine.seed if engine.seed is not None else Random().randrange(2**32)
            log.info(f"Drawing {engine.trials} random {chosen} cochains with seed {used_seed}")
            report = check_phi_trials(
                s,
                m,
                chosen,
                arity,
                engine.trials,
                seed=used_seed,
                degree=cochain_degree,
                density=engine.density,
                coefficient_range=engine.coefficient_range,
            )
        _print_report(report)
        return OK if report.passed else FAILED

    return _raise_or_exit(_guarded(_check_phi), _exit)


def _add_to_typer(app, command: PinczonCommand, foo):
    """Helper function to ensure correct command names"""
    app.command(command)(foo)


def _build_app() -> Typer:
    app = Typer()
    _add_to_typer(app, "verify", verify)
    _add_to_typer(app, "structure-form", structure_form)
    _add_to_typer(app, "bracket", bracket)
    _add_to_typer(app, "double-extension", double_extension_file)
    _add_to_typer(app, "cohomology", cohomology)
    _add_to_typer(app, "check-phi", check_phi)
    return app


def main():
    _configure_logging()
    _build_app()()
