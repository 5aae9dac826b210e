"""
Setup script para MCP Ortofree

Este script permite instalar el paquete MCP Ortofree y sus dependencias.
"""

from setuptools import setup, find_packages
import os

# Leer el README para la descripción larga
def read_readme():
    here = os.path.abspath(os.path.dirname(__file__))
    with open(os.path.join(here, 'README.md'), encoding='utf-8') as f:
        return f.read()

# Leer requirements (se omiten comentarios e inclusiones -r)
def read_requirements(filename='requirements.txt'):
    here = os.path.abspath(os.path.dirname(__file__))
    with open(os.path.join(here, filename), encoding='utf-8') as f:
        return [line.strip() for line in f if line.strip() and not line.startswith(('#', '-r'))]

setup(
    name="mcp-ortofree",
    version="1.0.0",
    description="Configuration-free subsets of F_q^n: constructions, bounds, certificates and exact search",
    long_description=read_readme(),
    long_description_content_type="text/markdown",

    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    include_package_data=True,

    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],

    python_requires=">=3.10",
    install_requires=read_requirements(),

    extras_require={
        "dev": read_requirements('requirements-dev.txt'),
    },

    entry_points={
        "console_scripts": [
            "ortofree=mcp_ortofree.cli:main",
            "ortofree-server=mcp_ortofree.server:main",
        ],
    },

    keywords=[
        "mcp", "model-context-protocol", "finite-fields", "extremal-combinatorics",
        "polynomial-method", "right-angles", "coding-theory", "branch-and-bound",
    ],

    zip_safe=False,
)
