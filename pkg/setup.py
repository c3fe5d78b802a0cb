from setuptools import setup, find_namespace_packages

setup(
    name="askey",
    author="Ho Heon Kim",
    author_email="hoheon0509@gmail.com",
    version="0.1.0",
    packages=find_namespace_packages(include=["askey", "askey.*"], exclude=["*.tests"]),
    package_data={"askey": ["config.yaml"]},
    install_requires=["PyYAML", "pandas", "numpy"],
    python_requires=">=3.10",
)
