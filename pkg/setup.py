from setuptools import setup, find_packages

setup(
    name="frolic",
    version="0.0.1",
    packages=find_packages(include=["frolic", "frolic.*"]),
    install_requires=["numpy==1.24.4", "scipy==1.10.1"],
    entry_points={"console_scripts": ["frolic=frolic.cli:main"]},
    description="Lie brackets of Frölicher groups from commutator curves",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
)
