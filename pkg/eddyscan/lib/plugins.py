"""A small plug-in registry used for detectors, readers and writers

Description:
------------

Detectors, frame readers and report writers are picked by name from the
command line or a config file. Instead of hardcoding those names, each
implementation registers itself with the :func:`register` decorator::

    from eddyscan.lib import plugins

    @plugins.register
    def detect(frame, config):
        ...

The plug-in is registered under the name of the module (file) it is defined in,
inside the package (directory) that contains it. All detectors live in
`eddyscan.detectors`, all frame readers in `eddyscan.readers` and so on. To
list the plug-ins of a package use :func:`names`::

    > from eddyscan.lib import plugins
    > plugins.names("eddyscan.detectors")
    ('hybrid', 'ow', 'wa')

and call one with :func:`call`, passing arguments by name::

    > plugins.call("eddyscan.detectors", "ow", frame=frame, config=config)
    DetectionReport(...)

Modules whose names start with an underscore hold shared base classes and are
never treated as plug-ins.
"""

# Standard library imports
from dataclasses import dataclass
import importlib
import logging
import pkgutil
import sys
from typing import Any, Callable, Dict, List, Tuple

# Eddyscan imports
from eddyscan.lib import exceptions

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Plugin:
    """Information about one plug-in

    Attributes:
        name:      Name of the plug-in, the name of its module.
        function:  The registered function or class.
        doc:       Doc-string of the module defining the plug-in.
    """

    name: str
    function: Callable
    doc: str

    @property
    def short_doc(self) -> str:
        """First paragraph of the module doc-string, on one line"""
        return self.doc.split("\n\n")[0].replace("\n", " ").strip()


# Populated by the register decorator as plug-in modules are imported
_PLUGINS: Dict[str, Dict[str, Plugin]] = dict()


def register(func: Callable) -> Callable:
    """Register a plug-in

    Args:
        func:  The function or class that is being registered.

    Returns:
        The same function or class, untouched.
    """
    package_name, _, plugin_name = func.__module__.rpartition(".")
    doc = sys.modules[func.__module__].__doc__ or ""
    _PLUGINS.setdefault(package_name, dict())[plugin_name] = Plugin(plugin_name, func, doc)
    log.debug(f"Registered plug-in {package_name}.{plugin_name}")

    return func


def call(package_name: str, plugin_name: str, **plugin_args: Any) -> Any:
    """Call a plug-in with named arguments

    Args:
        package_name:  Name of package containing plug-ins.
        plugin_name:   Name of the plug-in (module).
        plugin_args:   Named arguments passed on to the plug-in.

    Returns:
        Return value of the plug-in.
    """
    return load(package_name, plugin_name).function(**plugin_args)


def load(package_name: str, plugin_name: str) -> Plugin:
    """Load one plug-in, importing its module if necessary

    Args:
        package_name:  Name of package containing plug-ins.
        plugin_name:   Name of the plug-in (module).

    Returns:
        The registered plug-in.
    """
    if plugin_name not in _PLUGINS.get(package_name, dict()):
        _import_one(package_name, plugin_name)

    try:
        return _PLUGINS[package_name][plugin_name]
    except KeyError:
        raise exceptions.UnknownPluginError(
            f"Module '{package_name}.{plugin_name}' does not contain a plug-in"
        ) from None


def names(package_name: str) -> Tuple[str, ...]:
    """List all plug-ins in a package, sorted alphabetically

    Note that this imports every module in the package.

    Args:
        package_name:  Name of package containing plug-ins.

    Returns:
        Names of the plug-ins.
    """
    _import_all(package_name)
    return tuple(sorted(_PLUGINS.get(package_name, dict())))


def exists(package_name: str, plugin_name: str) -> bool:
    """Check whether a plug-in exists in a package

    Args:
        package_name:  Name of package containing plug-ins.
        plugin_name:   Name of the plug-in (module).

    Returns:
        True if the plug-in exists, False otherwise.
    """
    try:
        load(package_name, plugin_name)
    except exceptions.UnknownPluginError:
        return False
    return True


def short_docs(package_name: str, *plugin_names: str) -> List[Tuple[str, str]]:
    """One line documentation for plug-ins

    If no plug-ins are named, all plug-ins in the package are documented.

    Args:
        package_name:  Name of package containing plug-ins.
        plugin_names:  Names of plug-ins.

    Returns:
        Pairs of plug-in name and one line documentation.
    """
    plugin_names = plugin_names or names(package_name)
    return [(n, load(package_name, n).short_doc) for n in plugin_names]


def _import_one(package_name: str, plugin_name: str) -> None:
    """Import one plug-in module, which registers its plug-in"""
    if plugin_name.startswith("_"):
        raise exceptions.UnknownPluginError(
            f"'{plugin_name}' in '{package_name}' is not a plug-in"
        )
    try:
        importlib.import_module(f"{package_name}.{plugin_name}")
    except ModuleNotFoundError as err:
        if err.name not in (f"{package_name}.{plugin_name}", package_name):
            raise
        raise exceptions.UnknownPluginError(
            f"Plug-in '{plugin_name}' not found in '{package_name}'"
        ) from None


def _import_all(package_name: str) -> None:
    """Import every public module in a plug-in package"""
    try:
        package = importlib.import_module(package_name)
    except ImportError:
        raise exceptions.UnknownPackageError(
            f"Plug-in package '{package_name}' not found"
        ) from None

    if not hasattr(package, "__path__"):
        raise exceptions.UnknownPackageError(f"'{package_name}' is not a package")

    for module_info in pkgutil.iter_modules(package.__path__):
        if not module_info.name.startswith("_") and not module_info.ispkg:
            _import_one(package_name, module_info.name)
