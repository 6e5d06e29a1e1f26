"""Tests for the lib.plugins-module

"""

# Third party imports
import pytest

# Eddyscan imports
from eddyscan.lib import exceptions
from eddyscan.lib import plugins
from eddyscan.readers._reader import Reader


@pytest.fixture
def tmpfile(tmpdir):
    """A temporary file that can be read"""
    file_path = tmpdir.join("test")
    file_path.write("Temporary test file")

    return file_path


#
# Tests
#
def test_package_not_empty():
    """Test that names() finds the detectors in the eddyscan.detectors-package"""
    assert plugins.names("eddyscan.detectors") == ("hybrid", "ow", "wa")


def test_package_empty():
    """Test that names() does not find any plugins in eddyscan.lib-package"""
    assert len(plugins.names("eddyscan.lib")) == 0


def test_package_non_existing():
    """Test that a non-existent package raises an appropriate error"""
    with pytest.raises(exceptions.UnknownPackageError):
        plugins.names("eddyscan.non_existent")


def test_plugin_exists():
    """Test that an existing plugin returns True for exists()"""
    package_name = "eddyscan.readers"
    plugin_name = plugins.names(package_name)[0]
    assert plugins.exists(package_name, plugin_name)


@pytest.mark.parametrize("plugin_name", ["exceptions", "non_existent", "_reader"])
def test_plugin_exists_not(plugin_name):
    """Test that a non-existing plugin returns False for exists()

    Tests for a module without plug-in (eddyscan.lib.exceptions), a
    non-existent module and a private base module.
    """
    package_name = "eddyscan.readers" if plugin_name.startswith("_") else "eddyscan.lib"
    assert not plugins.exists(package_name, plugin_name)


def test_call_existing_plugin(tmpfile):
    """Test that calling a reader-plugin returns a Reader instance"""
    with open(tmpfile, mode="rb") as input_stream:
        reader = plugins.call("eddyscan.readers", "raw", input_stream=input_stream)
    assert isinstance(reader, Reader)


def test_call_non_exising_plugin():
    with pytest.raises(exceptions.UnknownPluginError):
        plugins.call("eddyscan.lib", "non_existent")


def test_short_docs():
    """The first paragraph of the module doc-string describes each plug-in"""
    docs = dict(plugins.short_docs("eddyscan.writers"))
    assert set(docs) == {"csv", "json", "raw"}
    assert docs["json"] == "Detection report as a JSON document"
