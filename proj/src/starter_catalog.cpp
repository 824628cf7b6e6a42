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

#include "privflow/catalog.hpp"

namespace privflow {

namespace {

// The first six sources and first five sinks are the published examples and
// must stay verbatim (including the constructor-like jsoup entry).
constexpr std::string_view kStarter = R"(# privflow starter catalog
# kind	signature	category
source	int java.io.DataInputStream.read(byte[])	I/O
source	java.lang.String java.net.URL.getQuery()	Network
source	java.sql.ResultSet java.sql.Statement.getResultSet()	Database
source	int org.apache.commons.io.input.ProxyInputStream.read(byte[])	I/O
source	org.apache.http.ssl.SSLContextBuilder org.apache.http.ssl.SSLContextBuilder.loadKeyMaterial()	Network
source	java.sql.ResultSet org.apache.derby.iapi.jdbc.BrokeredStatement.executeQuery(java.lang.String)	Database
sink	void java.util.logging.Logger.log(java.util.logging.LogRecord)	Log
sink	void java.io.BufferedWriter.write(int)	I/O
sink	void javax.servlet.http.HttpServletResponse.sendRedirect(java.lang.String)	Network
sink	void com.sun.xml.txw2.output.XMLWriter.comment(char[],int,int)	I/O
sink	java.net.HttpURLConnection org.jsoup.helper.HttpConnection(org.jsoup.Connection)	Network
# UI text input
source	android.text.Editable android.widget.EditText.getText()	I/O
# streams and readers
source	int java.io.InputStream.read()	I/O
source	int java.io.InputStream.read(byte[])	I/O
source	int java.io.InputStream.read(byte[],int,int)	I/O
source	void java.io.DataInputStream.readFully(byte[])	I/O
source	int java.io.DataInputStream.readInt()	I/O
source	java.lang.String java.io.DataInputStream.readUTF()	I/O
source	java.lang.String java.io.DataInputStream.readLine()	I/O
source	java.lang.Object java.io.ObjectInputStream.readObject()	I/O
source	java.lang.String java.io.BufferedReader.readLine()	I/O
source	int java.io.Reader.read(char[])	I/O
source	java.lang.String java.util.Scanner.next()	I/O
source	java.lang.String java.util.Scanner.nextLine()	I/O
source	int java.util.Scanner.nextInt()	I/O
source	byte[] java.nio.file.Files.readAllBytes(java.nio.file.Path)	I/O
# network
source	java.lang.String java.net.URL.getPath()	Network
source	java.io.InputStream java.net.URLConnection.getInputStream()	Network
source	java.io.InputStream java.net.Socket.getInputStream()	Network
source	java.lang.String javax.servlet.ServletRequest.getParameter(java.lang.String)	Network
source	java.lang.String javax.servlet.http.HttpServletRequest.getHeader(java.lang.String)	Network
# databases
source	java.sql.ResultSet java.sql.Statement.executeQuery(java.lang.String)	Database
source	java.sql.ResultSet java.sql.PreparedStatement.executeQuery()	Database
source	java.lang.String java.sql.ResultSet.getString(int)	Database
source	java.lang.String java.sql.ResultSet.getString(java.lang.String)	Database
source	int java.sql.ResultSet.getInt(java.lang.String)	Database
# logging
sink	void java.util.logging.Logger.log(java.util.logging.Level,java.lang.String)	Log
sink	void java.util.logging.Logger.info(java.lang.String)	Log
sink	void java.util.logging.Logger.warning(java.lang.String)	Log
sink	void java.util.logging.Logger.severe(java.lang.String)	Log
sink	void java.util.logging.Logger.fine(java.lang.String)	Log
# console, files and streams
sink	void java.io.PrintStream.print(java.lang.String)	I/O
sink	void java.io.PrintStream.print(int)	I/O
sink	void java.io.PrintStream.print(java.lang.Object)	I/O
sink	void java.io.PrintStream.println(java.lang.String)	I/O
sink	void java.io.PrintStream.println(int)	I/O
sink	void java.io.PrintStream.println(java.lang.Object)	I/O
sink	void java.io.PrintWriter.println(java.lang.String)	I/O
sink	void java.io.Writer.write(java.lang.String)	I/O
sink	void java.io.OutputStream.write(byte[])	I/O
sink	void java.io.DataOutputStream.writeUTF(java.lang.String)	I/O
sink	void java.io.ObjectOutputStream.writeObject(java.lang.Object)	I/O
# network egress
sink	void java.net.URLConnection.setRequestProperty(java.lang.String,java.lang.String)	Network
sink	void javax.servlet.ServletResponse.setContentType(java.lang.String)	Network
# databases
sink	boolean java.sql.Statement.execute(java.lang.String)	Database
sink	int java.sql.Statement.executeUpdate(java.lang.String)	Database
sink	void java.sql.PreparedStatement.setString(int,java.lang.String)	Database
)";

}  // namespace

std::string_view starter_catalog_text() { return kStarter; }

}  // namespace privflow
