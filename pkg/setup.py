#!/usr/bin/python3
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with this program; if not, see <http://www.gnu.org/licenses/>.
import setuptools

if __name__ == '__main__':
    setuptools.setup(
        name='wigner-rotation',
        version=open('version').read().strip(),
        description='Numerical checks of the Wigner rotation',
        license='GPL2+',
        python_requires='>=3.8',
        packages=setuptools.find_packages(
            include=("wignerrot", "wignerrot*")),
        install_requires=[
            'numpy',
            'scipy',
            'tqdm',
        ],
        entry_points={
            'console_scripts':
                'wigner-rotation = wignerrot.wignerrot:main',
        },
    )
