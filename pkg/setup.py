#!/usr/bin/python3
import os

from setuptools import find_packages, setup

with open("README.md", "r") as fh:
    long_description = fh.read()

if os.environ.get("ZIGRAND_LIB", "0") == "1":
    requirements_filename = "requirements.in"
else:
    requirements_filename = "requirements.txt"

with open(requirements_filename, "r") as f:
    requirements = list(map(str.strip, f.read().split("\n")))[:-1]

setup(
    name="zigrand",
    packages=find_packages(exclude=["tests", "tests.*"]),
    version="0.3.1",  # don't change this manually, use bumpversion instead
    license="MIT",
    description="Generalized Ziggurat sampling for unimodal, heavy-tailed and unbounded densities.",  # noqa: E501
    long_description=long_description,
    long_description_content_type="text/markdown",
    keywords=["ziggurat", "random", "sampling", "statistics"],
    install_requires=requirements,
    entry_points={"console_scripts": ["zigrand=zigrand._cli.__main__:main"]},
    include_package_data=True,
    package_data={"zigrand": ["data/*.yaml"]},
    python_requires=">=3.7,<4",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
    ],
)
