"""
@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

try:
    from setuptools import setup, find_packages
except ImportError:
    print("Must have setuptools installed to run setup.py. Please install and try again.")
    raise


def readme():
    with open('README.md') as f:
        return f.read()


def get_requirements():
    with open('requirements.txt') as f:
        return f.read().split()


setup(
    name='hexdirac',
    version='0.1.0',
    packages=find_packages(),
    package_data={'hexdirac': ['test/configs/*.ini']},
    license='BSD 2-Clause',
    description='Bloch bands, Dirac points and pseudo gauge fields of strained honeycomb media',
    long_description=readme(),
    long_description_content_type='text/markdown',
    install_requires=get_requirements(),
    python_requires='>=3.6, <4',
    entry_points={
        'console_scripts': ['hexdirac=hexdirac.model:main'],
    },
)
