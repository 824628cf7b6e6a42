// Copyright (c) 2026 The privflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

public class Status {
  Student student;
  String result;

  public Status(Student student) {
    this.student = student;
  }

  public void calculate() {
    result = encode(student.mark);
  }

  String encode(int mark) {
    return Integer.toString(mark);
  }

  String findResult() {
    return result;
  }
}
