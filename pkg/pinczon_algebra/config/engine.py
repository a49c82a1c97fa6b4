import os
from logging import getLogger
from pathlib import Path

from hydra import compose, initialize_config_dir
from hydra.utils import instantiate
from pydantic import BaseModel, Field

from ..algebra.cohomology import DEFAULT_SIZE_CAP
from ..exceptions import ConfigNotFoundError
from ..utils import _get_calling_file

__all__ = (
    "EngineConfiguration",
    "load_config",
)

_log = getLogger(__name__)


class EngineConfiguration(BaseModel):
    size_cap: int = Field(default=DEFAULT_SIZE_CAP, gt=0, description="Largest cochain space, in coefficients, a cohomology computation may build")
    max_arity: int = Field(default=6, ge=1, description="Largest Taylor or cochain arity accepted from files and flags")
    density: float = Field(default=0.3, gt=0, le=1, description="Share of admissible tuples given a coefficient in random cochains")
    coefficient_range: int = Field(default=3, ge=1, description="Random coefficients are drawn from -r..r without 0")
    trials: int = Field(default=25, ge=0, description="Number of random cochains checked by check-phi")
    seed: int | None = Field(default=None, description="Seed for random cochains, None for a fresh one")

    @classmethod
    def _find_parent_config_folder(cls, config_dir: str = "config", config_name: str = "", *, basepath: str = "", _offset: int = 2):
        if basepath:
            if basepath.endswith((".py", ".cfg", ".yml", ".yaml")):
                calling_file = Path(basepath)
            else:
                calling_file = Path(basepath) / "dummy.py"
        else:
            calling_file = Path(_get_calling_file(offset=_offset))
        folder = calling_file.parent.resolve()

        def _exists(folder: Path) -> bool:
            if not config_name:
                return (folder / config_dir).exists()
            return (folder / config_dir / f"{config_name}.yml").exists() or (folder / config_dir / f"{config_name}.yaml").exists()

        while not _exists(folder):
            folder = folder.parent
            if str(folder) == os.path.abspath(os.sep):
                raise ConfigNotFoundError(config_dir=config_dir, calling_file=calling_file)
        return folder.resolve(), (folder / config_dir).resolve()

    @classmethod
    def load(
        cls: "EngineConfiguration",
        config_dir: str = "",
        config_name: str = "",
        overrides: list[str] | None = None,
        *,
        basepath: str = "",
        _offset: int = 3,
    ) -> "EngineConfiguration":
        """Compose the packaged defaults with an optional user config directory found on or above the caller"""
        overrides = overrides or []

        with initialize_config_dir(config_dir=str(Path(__file__).resolve().parent / "hydra"), version_base=None):
            if config_dir:
                hydra_folder, config_dir = cls._find_parent_config_folder(
                    config_dir=config_dir, config_name=config_name, basepath=basepath, _offset=_offset
                )
                _log.info(f"Adding {config_dir} to the configuration search path")

                cfg = compose(config_name="base", overrides=[], return_hydra_config=True)
                searchpaths = cfg["hydra"]["searchpath"]
                searchpaths.extend([str(hydra_folder), str(config_dir)])
                if config_name:
                    overrides = [
                        f"+{config_dir.relative_to(hydra_folder).as_posix()}={config_name}",
                        *overrides.copy(),
                        f"hydra.searchpath=[{','.join(searchpaths)}]",
                    ]
                else:
                    overrides = [*overrides.copy(), f"hydra.searchpath=[{','.join(searchpaths)}]"]

            cfg = compose(config_name="base", overrides=overrides)
            config = instantiate(cfg)

            if not isinstance(config, cls):
                if isinstance(config, BaseModel):
                    config = config.model_dump(exclude_unset=True)
                config = cls(**config)
            return config


load_config = EngineConfiguration.load
